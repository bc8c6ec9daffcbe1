#pragma once

#include <cstdint>

#include "cmbvs/dataset.hpp"

namespace cmbvs {

// Generative settings for the four simulation scenarios. Scenarios 2 and 4
// add confounders to the count-model linear predictor, scenarios 3 and 4 add
// them to the outcome; the confounders are never handed to the fitted model.
struct ScenarioSpec {
  int scenario = 1;  // 1 correctly specified, 2 DM misspecified, 3 outcome misspecified,
                     // 4 unmeasured confounding in both levels
  int n = 200;
  int J = 50;
  double p_treat = 0.5;
  double c0 = 0.0;
  double c1 = 1.0;
  Eigen::VectorXd phi_true;       // length J; default (1, 1.2, 1.5, 0, ...)
  Eigen::VectorXd beta_log_true;  // length J; default (3, -1.5, -1.5, 0, ...)
  long library_min = 5000;  // per-subject read depth ~ Uniform{min..max}
  long library_max = 10000;
  std::uint64_t seed = 1;

  // Standard effect sizes at the requested shape.
  static ScenarioSpec standard(int scenario, std::uint64_t seed = 1);
  // Benchmark-sized setting: n = 36, J = 36, 2:1 treatment ratio, smaller effects.
  static ScenarioSpec application_like(int scenario, std::uint64_t seed = 1);

  void validate() const;
};

struct SimulatedData {
  Dataset data;
  std::vector<bool> truth;  // taxa with active relative mediation effects
  double true_direct = 0.0;
  double true_overall = 0.0;  // digamma formula in log coordinates
  Eigen::VectorXd alpha_true;
  Eigen::VectorXd phi_true;
  Eigen::VectorXd beta_log_true;
};

// Population-level overall indirect effect of the log-linear generative model:
// sum_j beta_log_j (E[log psi_j | t=1] - E[log psi_j | t=0]) with
// E[log psi_j | t] = digamma(gamma_j(t)) - digamma(sum_k gamma_k(t)) and
// gamma_j(t) = exp(alpha_j + phi_j t).
double true_overall_indirect(const Eigen::VectorXd& alpha, const Eigen::VectorXd& phi,
                             const Eigen::VectorXd& beta_log);

// Draws one data set per the scenario recipe. Deterministic given the spec.
SimulatedData generate(const ScenarioSpec& spec);

}  // namespace cmbvs
