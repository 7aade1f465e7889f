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

#include "obliqforest/simgen.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "obliqforest/csv.hpp"

namespace obliqforest {

namespace {

constexpr double kWeibullShape = 1.5;
constexpr int kPsdMaxIterations = 50;
constexpr double kEigenvalueFloor = 1e-8;

Eigen::VectorXd standardized(const Eigen::VectorXd& v) {
  const double mean = v.mean();
  const double sd = std::sqrt((v.array() - mean).square().mean());
  if (sd <= 0.0) return Eigen::VectorXd::Zero(v.size());
  return (v.array() - mean) / sd;
}

double sample_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void SimConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n_per_class < 1) throw std::invalid_argument("n_per_class must be >= 1");
  if (n_per_class % 3 != 0) throw std::invalid_argument("n_per_class must be a multiple of 3");
  if (!(max_corr >= 0.0 && max_corr < 1.0)) throw std::invalid_argument("max_corr must be in [0, 1)");
  if (!(hazard_ratio_per_sd > 0.0)) throw std::invalid_argument("hazard_ratio_per_sd must be > 0");
  if (!(target_censoring >= 0.01 && target_censoring < 1.0)) {
    throw std::invalid_argument("target_censoring must be in [0.01, 1)");
  }
}

std::string predictor_class_name(PredictorClass c) {
  switch (c) {
    case PredictorClass::kIrrelevant: return "irrelevant";
    case PredictorClass::kMain: return "main";
    case PredictorClass::kNonlinear: return "nonlinear";
    case PredictorClass::kCombinationSource: return "combination_source";
    case PredictorClass::kInteraction: return "interaction";
  }
  return "irrelevant";
}

Eigen::MatrixXd gen_correlation_matrix(int p, double max_corr, Rng& rng) {
  if (p < 1) throw std::invalid_argument("gen_correlation_matrix: p must be >= 1");
  if (!(max_corr >= 0.0 && max_corr < 1.0)) throw std::invalid_argument("max_corr must be in [0, 1)");
  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(p, p);
  if (max_corr == 0.0 || p == 1) return corr;

  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      corr(i, j) = corr(j, i) = rng.uniform(-max_corr, max_corr);
    }
  }

  // alternating projections: clip eigenvalues, restore the unit diagonal
  for (int iter = 0; iter < kPsdMaxIterations; ++iter) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
    if (eig.eigenvalues().minCoeff() >= 0.0) break;
    const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(kEigenvalueFloor);
    corr = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    const Eigen::VectorXd d = corr.diagonal().cwiseSqrt().cwiseInverse();
    corr = d.asDiagonal() * corr * d.asDiagonal();
    const Eigen::MatrixXd sym = 0.5 * (corr + corr.transpose());
    corr = sym;
    corr.diagonal().setOnes();
  }
  return corr;
}

Eigen::MatrixXd gen_predictors(int n, const Eigen::MatrixXd& corr, Rng& rng) {
  if (n < 1) throw std::invalid_argument("gen_predictors: n must be >= 1");
  const int p = static_cast<int>(corr.rows());
  Eigen::MatrixXd z(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z(i, j) = rng.normal();
  }
  if (corr.isIdentity(0.0)) return z;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  if (eig.info() != Eigen::Success) throw std::runtime_error("gen_predictors: eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("gen_predictors: matrix not PSD");
  const Eigen::VectorXd sqrt_vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd root = eig.eigenvectors() * sqrt_vals.asDiagonal() * eig.eigenvectors().transpose();
  return z * root;
}

EffectSpec build_effect_matrix(const Eigen::MatrixXd& x_raw, const SimConfig& config, Rng& rng) {
  const int m = config.n_per_class;
  const int p_obs = 5 * m;
  if (static_cast<int>(x_raw.cols()) < p_obs) {
    throw std::invalid_argument("build_effect_matrix: need at least " + std::to_string(p_obs) + " base columns");
  }
  const int n = static_cast<int>(x_raw.rows());
  const int n_comb = m / 3;
  const double log_hr = std::log(config.hazard_ratio_per_sd);

  // observed column blocks, in order: main, nonlinear, combination sources,
  // interaction, irrelevant
  const int main0 = 0, nl0 = m, src0 = 2 * m, int0 = 3 * m;

  EffectSpec spec;
  spec.class_labels.resize(static_cast<std::size_t>(p_obs));
  spec.relevance.resize(static_cast<std::size_t>(p_obs));
  spec.interaction_partner.assign(static_cast<std::size_t>(p_obs), -1);
  for (int j = 0; j < p_obs; ++j) {
    PredictorClass cls;
    if (j < nl0) {
      cls = PredictorClass::kMain;
    } else if (j < src0) {
      cls = PredictorClass::kNonlinear;
    } else if (j < int0) {
      cls = PredictorClass::kCombinationSource;
    } else if (j < 4 * m) {
      cls = PredictorClass::kInteraction;
    } else {
      cls = PredictorClass::kIrrelevant;
    }
    spec.class_labels[static_cast<std::size_t>(j)] = cls;
    spec.relevance[static_cast<std::size_t>(j)] = cls == PredictorClass::kIrrelevant ? 0 : 1;
  }

  const int n_effects = m + m + n_comb + m;
  spec.effects.resize(n, n_effects);
  spec.coefs.setConstant(n_effects, log_hr);
  int col = 0;

  // main effects enter as drawn (unit population variance already)
  for (int j = 0; j < m; ++j) spec.effects.col(col++) = x_raw.col(main0 + j);

  // non-linear effects: standardized sin(2x), a non-monotone odd map. Sign
  // information survives (an even map would be invisible to coefficient
  // negation by symmetry) while the oscillation keeps the effect far from
  // anything a linear fit on the raw column can capture.
  for (int j = 0; j < m; ++j) {
    const auto& v = x_raw.col(nl0 + j).array();
    spec.effects.col(col++) = standardized((2.0 * v).sin().matrix());
  }

  // combination effects: standardized mean of 3 dedicated source columns
  const int comb_effect0 = col;
  for (int g = 0; g < n_comb; ++g) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < 3; ++s) sum += x_raw.col(src0 + 3 * g + s);
    spec.effects.col(col++) = standardized(sum / 3.0);
  }

  // interaction effects: standardized product with a partner effect,
  // partners assigned round-robin across {main, nonlinear, combination}
  int idx_main = 0, idx_nl = 0, idx_comb = 0;
  for (int j = 0; j < m; ++j) {
    int partner_col;
    switch (j % 3) {
      case 0: partner_col = (idx_main++) % m; break;
      case 1: partner_col = m + (idx_nl++) % m; break;
      default: partner_col = comb_effect0 + (idx_comb++) % n_comb; break;
    }
    spec.interaction_partner[static_cast<std::size_t>(int0 + j)] = partner_col;
    spec.effects.col(col) = standardized(x_raw.col(int0 + j).cwiseProduct(spec.effects.col(partner_col)));
    ++col;
  }

  (void)rng;  // round-robin partner assignment is deterministic
  return spec;
}

SurvivalDraw gen_survival(const Eigen::MatrixXd& effects, const Eigen::VectorXd& coefs, double target_censoring,
                          Rng& rng) {
  if (effects.cols() != coefs.size()) throw std::invalid_argument("gen_survival: coefficient length mismatch");
  if (!coefs.allFinite()) throw std::invalid_argument("gen_survival: non-finite coefficients");
  if (!(target_censoring >= 0.01 && target_censoring < 1.0)) {
    throw std::invalid_argument("target_censoring must be in [0.01, 1)");
  }
  const int n = static_cast<int>(effects.rows());
  const Eigen::VectorXd lp = effects * coefs;

  // Weibull PH inversion: T = (E / (lambda exp(lp)))^(1/shape), E ~ Exp(1);
  // rescaling by the sample median is a common time-scale change, i.e. a
  // recalibration of lambda so the median event time is 1.
  std::vector<double> event(static_cast<std::size_t>(n));
  const double lambda0 = std::log(2.0);
  for (int i = 0; i < n; ++i) {
    const double e = -std::log1p(-rng.uniform());
    event[static_cast<std::size_t>(i)] = std::pow(e / (lambda0 * std::exp(lp[i])), 1.0 / kWeibullShape);
  }
  const double med = sample_median(event);
  for (auto& t : event) t /= med;

  std::vector<double> cens_base(static_cast<std::size_t>(n));
  for (auto& c : cens_base) c = -std::log1p(-rng.uniform());

  auto censored_fraction = [&](double rate) {
    int censored = 0;
    for (int i = 0; i < n; ++i) {
      if (cens_base[static_cast<std::size_t>(i)] / rate < event[static_cast<std::size_t>(i)]) ++censored;
    }
    return static_cast<double>(censored) / n;
  };

  double lo = 1e-12, hi = 1e12;
  if (censored_fraction(lo) > target_censoring || censored_fraction(hi) < target_censoring) {
    throw std::runtime_error("gen_survival: censoring rate bisection failed to bracket the target");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = std::sqrt(lo * hi);  // bisect on the log scale
    if (censored_fraction(mid) < target_censoring) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double frac_lo = std::abs(censored_fraction(lo) - target_censoring);
  const double frac_hi = std::abs(censored_fraction(hi) - target_censoring);
  const double best_rate = frac_lo <= frac_hi ? lo : hi;

  SurvivalDraw draw;
  draw.time.resize(n);
  draw.status.resize(n);
  int censored = 0;
  for (int i = 0; i < n; ++i) {
    const double c = cens_base[static_cast<std::size_t>(i)] / best_rate;
    const double e = event[static_cast<std::size_t>(i)];
    if (e <= c) {
      draw.time[i] = e;
      draw.status[i] = 1;
    } else {
      draw.time[i] = c;
      draw.status[i] = 0;
      ++censored;
    }
  }
  draw.realized_censoring = static_cast<double>(censored) / n;
  return draw;
}

SimData simulate(const SimConfig& config) {
  config.validate();
  Rng rng = Rng::stream(config.seed, kStreamSim, 0);
  const int p_obs = 5 * config.n_per_class;

  const Eigen::MatrixXd corr = gen_correlation_matrix(p_obs, config.max_corr, rng);
  const Eigen::MatrixXd x = gen_predictors(config.n, corr, rng);
  EffectSpec spec = build_effect_matrix(x, config, rng);
  const SurvivalDraw draw = gen_survival(spec.effects, spec.coefs, config.target_censoring, rng);

  std::vector<std::string> names(static_cast<std::size_t>(p_obs));
  std::vector<int> class_counter(5, 0);
  for (int j = 0; j < p_obs; ++j) {
    const auto cls = spec.class_labels[static_cast<std::size_t>(j)];
    const int idx = ++class_counter[static_cast<int>(cls)];
    names[static_cast<std::size_t>(j)] = predictor_class_name(cls) + "_" + std::to_string(idx);
  }

  SimData sim;
  sim.ds = SurvivalDataset::create(x, draw.time, draw.status, std::move(names));
  sim.relevance = std::move(spec.relevance);
  sim.class_labels = std::move(spec.class_labels);
  sim.interaction_partner = std::move(spec.interaction_partner);
  sim.realized_censoring = draw.realized_censoring;
  return sim;
}

void write_sim_csv(const SimData& sim, const std::string& data_path, const std::string& relevance_path,
                   const std::string& comment) {
  write_csv(sim.ds, data_path, "time", "status", comment);
  std::vector<std::string> header{"name", "class", "relevance"};
  std::vector<std::vector<std::string>> rows;
  rows.reserve(sim.ds.col_names.size());
  for (std::size_t j = 0; j < sim.ds.col_names.size(); ++j) {
    rows.push_back({sim.ds.col_names[j], predictor_class_name(sim.class_labels[j]),
                    std::to_string(sim.relevance[j])});
  }
  write_csv_strings(relevance_path, comment, header, rows);
}

}  // namespace obliqforest
