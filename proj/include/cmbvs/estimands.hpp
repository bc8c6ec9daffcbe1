#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cmbvs/composition.hpp"
#include "cmbvs/dataset.hpp"
#include "cmbvs/sampler.hpp"

namespace cmbvs {

// Posterior summary of one causal estimand. `samples` carries the per-draw
// values (zero-inflated for effects tied to spike-and-slab coefficients).
struct EffectSummary {
  std::string name;
  int taxon = -1;    // original taxon index; -1 for direct / overall effects
  int profile = -1;  // DM covariate profile id; -1 = population level
  std::vector<double> samples;
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool selected = false;
  double mppi_phi = std::numeric_limits<double>::quiet_NaN();
  double mppi_xi = std::numeric_limits<double>::quiet_NaN();
};

enum class Strategy { kCmbvs1, kCmbvs2, kCmbvs3 };

struct StrategyConfig {
  Strategy strategy = Strategy::kCmbvs1;
  double mppi_threshold = 0.5;
  double ci_level = 0.95;
  // CMbvs1: fit every taxon order instead of skipping taxa whose DM treatment
  // MPPI falls below the threshold in the initial fit.
  bool exhaustive = false;
  int workers = 1;  // concurrent refits for CMbvs1

  void validate() const;
};

// Equal-tail interval from empirical quantiles with linear interpolation
// between order statistics.
std::pair<double, double> equal_tail_interval(std::vector<double> values, double level);

// E[log psi_j | t, x] = digamma(gamma_j) - digamma(sum_k gamma_k) under the
// Dirichlet implied by one DM parameter sample.
Eigen::VectorXd expected_log_psi(const DmParams& dm, int treatment,
                                 const Eigen::VectorXd& x_profile);

// E[B_k] = A E[log psi]; the balance is linear in log psi so the expectation
// passes through the coefficient rows.
Eigen::VectorXd expected_balance(const DmParams& dm, const PartitionScheme& scheme,
                                 int treatment, const Eigen::VectorXd& x_profile);

// Per-taxon coefficients c with delta_j = c_j * theta_j; c = A^T beta computed
// by the telescoping expansion of the SBP rows.
Eigen::VectorXd relative_effect_coefficients(const Eigen::VectorXd& beta,
                                             const PartitionScheme& scheme);

// Direct effect: the posterior of c1.
EffectSummary direct_effect(const PosteriorTrace& trace, double ci_level = 0.95);

// Overall indirect effect for one covariate profile: per sample
// sum_k beta_k (E[B_k | t=1] - E[B_k | t=0]), inclusion states honored.
EffectSummary overall_indirect(const PosteriorTrace& trace, const PartitionScheme& scheme,
                               const Eigen::VectorXd& x_profile, int profile_id = -1,
                               double ci_level = 0.95);

// Relative indirect effects of all J taxa for one covariate profile.
std::vector<EffectSummary> relative_indirect(const PosteriorTrace& trace,
                                             const PartitionScheme& scheme,
                                             const Eigen::VectorXd& x_profile,
                                             int profile_id = -1, double ci_level = 0.95);

// Output of a selection strategy: a per-taxon decision (profiles aggregated by
// "any profile selects"), the per-taxon/per-profile relative effect summaries,
// and the direct / overall effects of the reporting fit.
struct MediationResult {
  Strategy strategy = Strategy::kCmbvs1;
  std::vector<bool> selected;                   // length J
  std::vector<EffectSummary> relative;          // taxon x profile entries
  EffectSummary direct;
  std::vector<EffectSummary> overall;           // one per profile
  Eigen::VectorXd mppi_phi;                     // DM treatment MPPIs (initial fit)
  std::vector<bool> refit_performed;            // CMbvs1: which taxa got their own fit
};

// Identity-order fit shared by the strategies (seeded with
// derive_seed(cfg.seed, 0), so standalone and shared invocations coincide).
PosteriorTrace run_identity_fit(const Dataset& data, const Hyperparameters& hp,
                                const SamplerConfig& cfg);

// Strategy 1: J refits with each taxon placed first; taxon j is selected when
// both MPPI(varphi_1^[j]) and MPPI(xi_1^[j]) reach the threshold. The default
// schedule skips taxa whose treatment MPPI already fails the threshold in the
// initial fit; `exhaustive` disables the shortcut. `initial`, when given, must
// be the run_identity_fit trace for the same inputs.
MediationResult select_cmbvs1(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy,
                              const PosteriorTrace* initial = nullptr);

// Strategy 2: single fit; select taxa whose relative-effect credible interval
// excludes zero, per covariate profile.
MediationResult select_cmbvs2(const PosteriorTrace& trace, const Dataset& data,
                              const StrategyConfig& strategy);
MediationResult select_cmbvs2(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy);

// Strategy 3: fit, prune DM treatment terms below the MPPI threshold, refit
// with those terms removed, then apply the interval rule. `stage1`, when
// given, must be the run_identity_fit trace for the same inputs.
MediationResult select_cmbvs3(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy,
                              const PosteriorTrace* stage1 = nullptr);

}  // namespace cmbvs
