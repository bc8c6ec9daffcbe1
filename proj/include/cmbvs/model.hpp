#pragma once

#include <Eigen/Core>

#include "cmbvs/dataset.hpp"
#include "cmbvs/errors.hpp"

namespace cmbvs {

// Outcome-level parameters (linear model on balances).
// Exclusion coupling: xi[j] == 0 implies beta[j] == 0 exactly, and likewise
// nu[p] == 0 implies kappa[p] == 0 — the point mass of the spike.
struct OutcomeParams {
  double c0 = 0.0;
  double c1 = 0.0;
  double sigma2 = 1.0;
  Eigen::VectorXd beta;   // length J-1
  Eigen::VectorXi xi;     // length J-1, in {0,1}
  Eigen::VectorXd kappa;  // length P
  Eigen::VectorXi nu;     // length P, in {0,1}

  static OutcomeParams zeros(int J, int P);
};

// DM-level parameters (log-linear model for the concentrations).
struct DmParams {
  Eigen::VectorXd alpha;   // length J
  Eigen::VectorXd phi;     // length J
  Eigen::VectorXi varphi;  // length J, in {0,1}
  Eigen::MatrixXd theta;   // J x P_dm
  Eigen::MatrixXi zeta;    // J x P_dm, in {0,1}

  static DmParams zeros(int J, int P_dm);
};

// Gamma data-augmentation latents; psi_ij = k_ij / sum_j k_ij.
struct Augmentation {
  Eigen::MatrixXd k;  // n x J, strictly positive
  Eigen::VectorXd u;  // length n, strictly positive
};

struct Hyperparameters {
  double h_c = 1.0;
  double h_beta = 1.0;
  double h_kappa = 1.0;
  double a0 = 1.0;  // sigma2 ~ InverseGamma(a0, b0)
  double b0 = 1.0;
  double sigma2_alpha = 1.0;
  Eigen::VectorXd r2;  // length J, DM slab variances (default 10)
  // Beta-Bernoulli pairs for the four indicator families.
  double a_xi = 1.0, b_xi = 1.0;          // balances in the outcome model
  double a_nu = 1.0, b_nu = 1.0;          // outcome covariates
  double a_varphi = 1.0, b_varphi = 1.0;  // DM treatment terms
  double a_zeta = 1.0, b_zeta = 1.0;      // DM covariate terms

  static Hyperparameters defaults(int J);
  void validate(int J) const;
};

inline double log_normal_pdf(double x, double mean, double var) {
  static constexpr double kLog2Pi = 1.8378770664093454836;
  const double d = x - mean;
  return -0.5 * (kLog2Pi + std::log(var)) - d * d / (2.0 * var);
}

// Marginal Beta-Bernoulli log mass of a single indicator value.
inline double log_beta_bernoulli(int value, double a, double b) {
  return value == 1 ? std::log(a / (a + b)) : std::log(b / (a + b));
}

// True when every excluded coefficient is exactly zero.
bool exclusion_coupling_holds(const OutcomeParams& outcome, const DmParams& dm);

// Linear predictors lambda_ij = alpha_j + phi_j t_i + sum_p theta_jp x_ip.
Eigen::MatrixXd lambda_matrix(const DmParams& dm, const Dataset& data);

// Concentrations gamma_ij = exp(lambda_ij). Raises NumericError naming the
// offending (subject, taxon) once the exponent passes 700: overflow there
// means a divergent chain and must surface.
Eigen::MatrixXd gamma_concentrations(const DmParams& dm, const Dataset& data);

// Gaussian log likelihood of the outcome given precomputed balances (n x J-1).
double log_lik_outcome(const OutcomeParams& state, const Eigen::MatrixXd& balances,
                       const Dataset& data);

// Joint log prior of both levels: Beta-Bernoulli marginals for all indicators,
// slab densities for included coefficients only, Gaussian priors for c0, c1
// and alpha, inverse-gamma for sigma2.
double log_prior_state(const OutcomeParams& outcome, const DmParams& dm,
                       const Hyperparameters& hp);

}  // namespace cmbvs
