#pragma once

#include <cstdint>
#include <vector>

#include "cmbvs/composition.hpp"
#include "cmbvs/dataset.hpp"
#include "cmbvs/model.hpp"
#include "cmbvs/rng.hpp"

namespace cmbvs {

enum class ScanMode { kSingle, kFull };

struct SamplerConfig {
  long iterations = 5000;
  long burn_in = 250;
  long thin = 10;
  double rw_sd_alpha = 0.5;  // random-walk sd for alpha
  double rw_sd_coef = 0.5;   // random-walk sd for within-model coefficient refreshes
  std::uint64_t seed = 1;
  // One Add-Delete proposal per indicator family per sweep (kSingle) or a
  // proposal for every index each sweep (kFull). Same stationary law.
  ScanMode scan = ScanMode::kSingle;
  bool prior_only = false;  // drop every likelihood term (prior-recovery runs)
  bool store_psi = true;    // keep per-subject psi snapshots in the trace

  void validate() const;
};

// Optional freezes. Strategy stages (CMbvs3) force DM treatment terms out;
// oracle tests freeze whole blocks.
struct UpdateMask {
  std::vector<bool> exclude_phi;  // length J or empty; true = phi_j fixed at 0
  std::vector<bool> exclude_xi;   // length J-1 or empty; true = beta_j fixed at 0
  bool update_augmentation = true;  // u and k
  bool update_dm = true;            // alpha and DM selection blocks
  bool update_outcome = true;       // outcome block
};

struct AcceptanceCounter {
  long proposed = 0;
  long accepted = 0;
  double rate() const { return proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0; }
};

struct AcceptanceStats {
  AcceptanceCounter alpha;
  AcceptanceCounter k_rows;
  AcceptanceCounter phi_add_delete;
  AcceptanceCounter theta_add_delete;
  AcceptanceCounter dm_within;
  AcceptanceCounter xi_add_delete;
  AcceptanceCounter nu_add_delete;
  AcceptanceCounter outcome_within;
};

// Thinned post-burn-in snapshots. Every snapshot satisfies the exclusion
// coupling; psi is stored only when the config asks for it.
struct PosteriorTrace {
  int n = 0, J = 0, P = 0, P_dm = 0;
  std::vector<int> taxon_order;
  long iterations = 0, burn_in = 0, thin = 0;
  std::vector<OutcomeParams> outcome;
  std::vector<DmParams> dm;
  std::vector<Eigen::MatrixXd> psi;
  AcceptanceStats acceptance;

  std::size_t size() const { return outcome.size(); }
};

enum class IndicatorFamily { kXi, kNu, kVarphi, kZeta };

// Marginal posterior probabilities of inclusion: per-indicator means of the
// retained samples. kZeta is returned flattened row-major (j * P_dm + p).
Eigen::VectorXd mppi(const PosteriorTrace& trace, IndicatorFamily family);

// Metropolis-within-Gibbs sampler over the joint model. One instance owns one
// chain; kernels are public so tests can drive them against oracles.
class Sampler {
 public:
  Sampler(const Dataset& data, Hyperparameters hp, SamplerConfig cfg,
          PartitionScheme scheme, UpdateMask mask = {});

  // Exact Gibbs draw u_i ~ Gamma(zdot_i, sum_j k_ij).
  void update_u();
  // Per-subject row proposal k*_ij ~ Gamma(gamma_ij + z_ij, 1 + u_i) — the
  // full conditional under the DM block alone — accepted with the outcome
  // likelihood ratio at the implied balances. Pure Gibbs when no balance is
  // included in the outcome model.
  void update_k();
  // Random-walk MH per alpha_j against the augmented DM likelihood.
  void update_alpha();
  // Add-Delete MH for (phi, varphi) and (theta, zeta) plus random-walk
  // refresh of the included coefficients.
  void update_spike_slab_dm();
  // Add-Delete MH for (beta, xi) and (kappa, nu), random-walk refresh of
  // included coefficients, conjugate Gibbs for c0, c1 and sigma2.
  void update_outcome_block();

  // Finer-grained kernels (composed by the block updates above).
  void update_varphi_phi();
  void update_zeta_theta();
  void dm_within_refresh();
  void update_xi_beta();
  void update_nu_kappa();
  void outcome_within_refresh();
  void update_c0_c1_gibbs();
  void update_sigma2_gibbs();

  // One full sweep in the fixed order: u, k, alpha, DM selection, outcome.
  void sweep();
  // Runs the configured chain and returns the thinned post-burn-in trace.
  PosteriorTrace run();

  // State access for tests and strategy drivers.
  const OutcomeParams& outcome_state() const { return outcome_; }
  const DmParams& dm_state() const { return dm_; }
  const Augmentation& augmentation() const { return aug_; }
  const Eigen::MatrixXd& balances() const { return balances_; }
  const AcceptanceStats& acceptance() const { return stats_; }
  const PartitionScheme& scheme() const { return scheme_; }

  void set_dm_state(DmParams dm);            // re-syncs cached concentrations
  void set_outcome_state(OutcomeParams s);   // re-syncs cached predictor
  void set_augmentation(Augmentation aug);   // re-syncs balances

  Eigen::MatrixXd psi() const;  // k rows normalized to the simplex

 private:
  void rebuild_dm_caches();
  void rebuild_outcome_caches();
  double dm_column_loglik(int j, const Eigen::VectorXd& gamma_col) const;
  double outcome_delta_loglik(const Eigen::VectorXd& delta_pred) const;
  void check_lambda(double value, int subject, int taxon) const;
  bool phi_allowed(int j) const;
  bool xi_allowed(int j) const;
  void snapshot(PosteriorTrace& trace) const;

  const Dataset& data_;
  Hyperparameters hp_;
  SamplerConfig cfg_;
  PartitionScheme scheme_;
  UpdateMask mask_;
  Rng rng_;

  OutcomeParams outcome_;
  DmParams dm_;
  Augmentation aug_;

  Eigen::VectorXd zdot_;       // library sizes
  Eigen::MatrixXd lambda_;     // n x J linear predictors
  Eigen::MatrixXd gamma_;      // exp(lambda)
  Eigen::MatrixXd log_k_;      // n x J
  Eigen::VectorXd k_total_;    // row sums of k
  Eigen::MatrixXd balances_;   // n x (J-1)
  Eigen::VectorXd predictor_;  // outcome-model linear predictor
  AcceptanceStats stats_;
};

// Convenience wrapper: construct, run, return the trace.
PosteriorTrace run_chain(const Dataset& data, const Hyperparameters& hp,
                         const SamplerConfig& cfg, const PartitionScheme& scheme,
                         const UpdateMask& mask = {});

}  // namespace cmbvs
