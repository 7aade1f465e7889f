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

#pragma once

#include <Eigen/Core>
#include <vector>

namespace obliqforest {

/// Result of Newton-Raphson scoring on the weighted Cox partial likelihood
/// (Breslow tie handling throughout).
///
/// `score` and `hessian` are the quantities from the scoring evaluation that
/// produced the final `beta` update, i.e. evaluated at the iterate before
/// the last step. With beta_init = 0 and one step this makes
/// beta = H(0)^{-1} U(0) exact, and a one-iteration fit identical to
/// newton_raphson_step. `loglik` is evaluated at the returned beta.
///
/// Predictor columns that break the tolerant Hessian factorization get
/// coefficient 0, infinite std_err, and p-value 1.
struct CoxStepResult {
  Eigen::VectorXd beta;
  Eigen::VectorXd score;
  Eigen::MatrixXd hessian;
  Eigen::VectorXd std_err;
  Eigen::VectorXd pvalues;  // two-sided Wald
  int n_iter = 0;
  double loglik = 0.0;
};

/// One Newton-Raphson scoring update from beta_init. When beta_init is all
/// zeros the linear predictor is never exponentiated (exp(x'b) = 1), which
/// also removes the need to scale predictors first.
///
/// Throws: "collinear predictors" when no column yields a usable pivot;
/// "no events" when the weighted event count is zero.
CoxStepResult newton_raphson_step(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                                  const Eigen::VectorXd& weights, const Eigen::VectorXd& beta_init);

/// Iterated Newton-Raphson scoring from beta = 0 until
/// |loglik_new - loglik| < epsilon * |loglik_new| or max_iter updates.
/// A step that lowers the log-likelihood is halved up to 5 times; a
/// non-finite log-likelihood after all halvings raises "diverged".
/// Columns are centered/scaled internally when max_iter > 1 (coefficients
/// are mapped back to the original scale); single-step mode skips scaling.
CoxStepResult newton_raphson_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                                 const Eigen::VectorXd& weights, int max_iter, double epsilon);

namespace detail {

/// Weighted Cox log partial likelihood (Breslow) at beta; shared by the
/// scoring loop and the step-halving checks.
double cox_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& time, const Eigen::VectorXi& status,
                  const Eigen::VectorXd& weights, const Eigen::VectorXd& beta);

/// Tolerant LDL' factorization in the style of classical Cox software:
/// pivots below tol_rel * max(diagonal) are dropped (their solve component
/// is forced to zero). Returns the number of usable pivots.
struct LdlFactor {
  Eigen::MatrixXd f;         // L strictly below the diagonal, D on it
  std::vector<bool> usable;  // per-column pivot status
  int rank = 0;
};

LdlFactor ldl_factor(const Eigen::MatrixXd& h, double tol_rel);
Eigen::VectorXd ldl_solve(const LdlFactor& fac, const Eigen::VectorXd& b);
Eigen::MatrixXd ldl_inverse(const LdlFactor& fac);  // dropped rows/cols are zero

}  // namespace detail

}  // namespace obliqforest
