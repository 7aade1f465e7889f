// Copyright 2026 The obliqforest Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "obliqforest/coxscore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace obliqforest {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr int kMaxHalvings = 5;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Row order for the single reverse-time sweep: descending time, index as a
// tiebreak so results do not depend on sort stability.
std::vector<int> descending_time_order(const Eigen::VectorXd& time) {
  std::vector<int> order(static_cast<std::size_t>(time.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (time[a] != time[b]) return time[a] > time[b];
    return a < b;
  });
  return order;
}

void validate_inputs(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                     const Eigen::VectorXd& weights) {
  const auto m = x.rows();
  if (time.size() != m || status.size() != m || weights.size() != m) {
    throw std::invalid_argument("cox scoring: input length mismatch");
  }
  if (x.cols() < 1) throw std::invalid_argument("cox scoring: need at least one predictor column");
  double weighted_events = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("cox scoring: negative weight");
    if (status[i] == 1) weighted_events += weights[i];
  }
  if (weighted_events <= 0.0) throw std::runtime_error("no events");
}

// One reverse-time sweep accumulating the Breslow log partial likelihood
// and, when requested, the score vector and observed information. Risk-set
// sums at an event time include every row tied at that time. With an
// all-zero beta the relative risks are identically 1 and the linear
// predictor is neither formed nor exponentiated.
void score_info_sweep(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                      const Eigen::VectorXd& weights, const Eigen::VectorXd& beta, const std::vector<int>& order,
                      double* ll_out, Eigen::VectorXd* u_out, Eigen::MatrixXd* h_out) {
  const int m = static_cast<int>(x.rows());
  const int k = static_cast<int>(x.cols());
  const bool zero_beta = beta.isZero(0.0);
  const bool derivs = u_out != nullptr;

  Eigen::VectorXd risk;  // per-row w * exp(eta); just w in the zero-beta path
  Eigen::VectorXd eta;
  if (!zero_beta) {
    eta = x * beta;
    risk = (eta.array().exp() * weights.array()).matrix();
  }

  double ll = 0.0;
  double denom = 0.0;
  Eigen::VectorXd a;     // risk-weighted sum of x over the risk set
  Eigen::MatrixXd cmat;  // risk-weighted sum of x x' (lower triangle)
  Eigen::VectorXd u;
  Eigen::MatrixXd h;
  if (derivs) {
    a.setZero(k);
    cmat.setZero(k, k);
    u.setZero(k);
    h.setZero(k, k);
  }

  int i = 0;
  while (i < m) {
    const double t = time[order[static_cast<std::size_t>(i)]];
    const int group_start = i;
    // everyone tied at t enters the risk set first
    for (; i < m && time[order[static_cast<std::size_t>(i)]] == t; ++i) {
      const int row = order[static_cast<std::size_t>(i)];
      const double w = weights[row];
      if (w == 0.0) continue;
      const double r = zero_beta ? w : risk[row];
      denom += r;
      if (derivs) {
        for (int q = 0; q < k; ++q) {
          const double xq = x(row, q);
          const double rxq = r * xq;
          a[q] += rxq;
          for (int s = 0; s <= q; ++s) cmat(q, s) += rxq * x(row, s);
        }
      }
    }
    double dead_weight = 0.0;
    for (int j = group_start; j < i; ++j) {
      const int row = order[static_cast<std::size_t>(j)];
      const double w = weights[row];
      if (w == 0.0 || status[row] != 1) continue;
      dead_weight += w;
      if (!zero_beta) ll += w * eta[row];
      if (derivs) {
        for (int q = 0; q < k; ++q) u[q] += w * x(row, q);
      }
    }
    if (dead_weight > 0.0) {
      ll -= dead_weight * std::log(denom);
      if (derivs) {
        for (int q = 0; q < k; ++q) {
          const double xbar_q = a[q] / denom;
          u[q] -= dead_weight * xbar_q;
          for (int s = 0; s <= q; ++s) h(q, s) += dead_weight * (cmat(q, s) / denom - xbar_q * (a[s] / denom));
        }
      }
    }
  }

  if (ll_out) *ll_out = ll;
  if (derivs) {
    h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
    *u_out = std::move(u);
    *h_out = std::move(h);
  }
}

struct ScaleInfo {
  Eigen::VectorXd center;
  Eigen::VectorXd scale;  // 1 for zero-variance columns
};

ScaleInfo weighted_scale(const Eigen::MatrixXd& x, const Eigen::VectorXd& weights) {
  const int k = static_cast<int>(x.cols());
  ScaleInfo info;
  info.center.resize(k);
  info.scale.resize(k);
  const double total = weights.sum();
  for (int q = 0; q < k; ++q) {
    const double mean = x.col(q).dot(weights) / total;
    const double var = (x.col(q).array() - mean).square().matrix().dot(weights) / total;
    info.center[q] = mean;
    info.scale[q] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  return info;
}

CoxStepResult nr_core(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                      const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_init, int max_iter, double epsilon) {
  const auto order = descending_time_order(time);
  const int k = static_cast<int>(x.cols());

  Eigen::VectorXd beta = beta_init;
  double ll = 0.0;
  Eigen::VectorXd u;
  Eigen::MatrixXd h;
  score_info_sweep(x, time, status, weights, beta, order, &ll, &u, &h);

  CoxStepResult res;
  res.score = u;
  res.hessian = h;
  detail::LdlFactor fac;

  for (int iter = 1; iter <= max_iter; ++iter) {
    fac = detail::ldl_factor(h, kPivotTol);
    if (fac.rank == 0) throw std::runtime_error("collinear predictors");
    Eigen::VectorXd beta_new = beta + detail::ldl_solve(fac, u);
    double ll_new = detail::cox_loglik(x, time, status, weights, beta_new);
    for (int halving = 0; halving < kMaxHalvings && (!std::isfinite(ll_new) || ll_new < ll); ++halving) {
      beta_new = 0.5 * (beta + beta_new);
      ll_new = detail::cox_loglik(x, time, status, weights, beta_new);
    }
    if (!std::isfinite(ll_new)) throw std::runtime_error("diverged");

    res.score = u;
    res.hessian = h;
    const bool converged = std::abs(ll_new - ll) < epsilon * std::abs(ll_new);
    beta = beta_new;
    ll = ll_new;
    res.n_iter = iter;
    if (converged || iter == max_iter) break;
    score_info_sweep(x, time, status, weights, beta, order, nullptr, &u, &h);
  }

  res.beta = beta;
  res.loglik = ll;
  const Eigen::MatrixXd hinv = detail::ldl_inverse(fac);
  res.std_err.resize(k);
  res.pvalues.resize(k);
  for (int q = 0; q < k; ++q) {
    if (fac.usable[static_cast<std::size_t>(q)] && hinv(q, q) > 0.0) {
      res.std_err[q] = std::sqrt(hinv(q, q));
      const double z = std::abs(res.beta[q]) / res.std_err[q];
      res.pvalues[q] = 2.0 * (1.0 - normal_cdf(z));
    } else {
      res.std_err[q] = std::numeric_limits<double>::infinity();
      res.pvalues[q] = 1.0;
    }
  }
  return res;
}

}  // namespace

CoxStepResult newton_raphson_step(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                                  const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_init) {
  validate_inputs(x, time, status, weights);
  if (beta_init.size() != x.cols()) throw std::invalid_argument("cox scoring: beta_init length mismatch");
  return nr_core(x, time, status, weights, beta_init, 1, 1e-9);
}

CoxStepResult newton_raphson_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                                 const Eigen::VectorXd& weights, int max_iter, double epsilon) {
  validate_inputs(x, time, status, weights);
  if (max_iter < 1) throw std::invalid_argument("cox scoring: max_iter must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("cox scoring: epsilon must be > 0");

  const Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(x.cols());
  if (max_iter == 1) {
    // single-step mode: with beta = 0 nothing is exponentiated, so the
    // predictors need no scaling
    return nr_core(x, time, status, weights, beta0, 1, epsilon);
  }

  const ScaleInfo sc = weighted_scale(x, weights);
  Eigen::MatrixXd xs(x.rows(), x.cols());
  for (Eigen::Index q = 0; q < x.cols(); ++q) xs.col(q) = (x.col(q).array() - sc.center[q]) / sc.scale[q];
  CoxStepResult res = nr_core(xs, time, status, weights, beta0, max_iter, epsilon);

  // map everything back to the original predictor scale
  res.beta.array() /= sc.scale.array();
  res.std_err.array() /= sc.scale.array();
  res.score.array() *= sc.scale.array();
  res.hessian = sc.scale.asDiagonal() * res.hessian * sc.scale.asDiagonal();
  return res;
}

namespace detail {

double cox_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                  const Eigen::VectorXd& weights, const Eigen::VectorXd& beta) {
  const auto order = descending_time_order(time);
  double ll = 0.0;
  score_info_sweep(x, time, status, weights, beta, order, &ll, nullptr, nullptr);
  return ll;
}

LdlFactor ldl_factor(const Eigen::MatrixXd& h, double tol_rel) {
  const int k = static_cast<int>(h.rows());
  LdlFactor fac;
  fac.f = h;
  fac.usable.assign(static_cast<std::size_t>(k), false);

  double max_diag = 0.0;
  for (int i = 0; i < k; ++i) max_diag = std::max(max_diag, fac.f(i, i));
  if (max_diag <= 0.0) return fac;  // nothing usable
  const double eps = tol_rel * max_diag;

  for (int i = 0; i < k; ++i) {
    const double pivot = fac.f(i, i);
    if (!std::isfinite(pivot) || pivot < eps) {
      fac.f(i, i) = 0.0;
      continue;
    }
    fac.usable[static_cast<std::size_t>(i)] = true;
    ++fac.rank;
    for (int j = i + 1; j < k; ++j) {
      const double l = fac.f(j, i) / pivot;
      fac.f(j, i) = l;
      fac.f(j, j) -= l * l * pivot;
      for (int q = j + 1; q < k; ++q) fac.f(q, j) -= l * fac.f(q, i);
    }
  }
  return fac;
}

Eigen::VectorXd ldl_solve(const LdlFactor& fac, const Eigen::VectorXd& b) {
  const int k = static_cast<int>(b.size());
  Eigen::VectorXd y = b;
  for (int i = 0; i < k; ++i) {
    double temp = y[i];
    for (int j = 0; j < i; ++j) temp -= y[j] * fac.f(i, j);
    y[i] = temp;
  }
  for (int i = k - 1; i >= 0; --i) {
    if (fac.f(i, i) == 0.0) {
      y[i] = 0.0;
    } else {
      double temp = y[i] / fac.f(i, i);
      for (int j = i + 1; j < k; ++j) temp -= y[j] * fac.f(j, i);
      y[i] = temp;
    }
  }
  return y;
}

Eigen::MatrixXd ldl_inverse(const LdlFactor& fac) {
  const int k = static_cast<int>(fac.f.rows());
  Eigen::MatrixXd inv(k, k);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
  for (int j = 0; j < k; ++j) {
    e[j] = 1.0;
    inv.col(j) = ldl_solve(fac, e);
    e[j] = 0.0;
  }
  // dropped components already solve to zero; clear their rows as well
  for (int i = 0; i < k; ++i) {
    if (!fac.usable[static_cast<std::size_t>(i)]) inv.row(i).setZero(), inv.col(i).setZero();
  }
  return inv;
}

}  // namespace detail

}  // namespace obliqforest
