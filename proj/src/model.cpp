#include "cmbvs/model.hpp"

#include <cmath>
#include <sstream>

#include "cmbvs/special_functions.hpp"

namespace cmbvs {

namespace {
constexpr double kMaxLambda = 700.0;  // exp() overflows shortly above this
}

OutcomeParams OutcomeParams::zeros(int J, int P) {
  OutcomeParams s;
  s.beta = Eigen::VectorXd::Zero(J - 1);
  s.xi = Eigen::VectorXi::Zero(J - 1);
  s.kappa = Eigen::VectorXd::Zero(P);
  s.nu = Eigen::VectorXi::Zero(P);
  return s;
}

DmParams DmParams::zeros(int J, int P_dm) {
  DmParams s;
  s.alpha = Eigen::VectorXd::Zero(J);
  s.phi = Eigen::VectorXd::Zero(J);
  s.varphi = Eigen::VectorXi::Zero(J);
  s.theta = Eigen::MatrixXd::Zero(J, P_dm);
  s.zeta = Eigen::MatrixXi::Zero(J, P_dm);
  return s;
}

Hyperparameters Hyperparameters::defaults(int J) {
  Hyperparameters hp;
  hp.r2 = Eigen::VectorXd::Constant(J, 10.0);
  return hp;
}

void Hyperparameters::validate(int J) const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string("Hyperparameters: ") + name + " must be positive");
  };
  positive(h_c, "h_c");
  positive(h_beta, "h_beta");
  positive(h_kappa, "h_kappa");
  positive(a0, "a0");
  positive(b0, "b0");
  positive(sigma2_alpha, "sigma2_alpha");
  positive(a_xi, "a_xi");
  positive(b_xi, "b_xi");
  positive(a_nu, "a_nu");
  positive(b_nu, "b_nu");
  positive(a_varphi, "a_varphi");
  positive(b_varphi, "b_varphi");
  positive(a_zeta, "a_zeta");
  positive(b_zeta, "b_zeta");
  if (r2.size() != J) throw DimensionError("Hyperparameters: r2 length must equal J");
  for (Eigen::Index j = 0; j < r2.size(); ++j) positive(r2[j], "r2");
}

bool exclusion_coupling_holds(const OutcomeParams& outcome, const DmParams& dm) {
  for (Eigen::Index j = 0; j < outcome.xi.size(); ++j)
    if (outcome.xi[j] == 0 && outcome.beta[j] != 0.0) return false;
  for (Eigen::Index p = 0; p < outcome.nu.size(); ++p)
    if (outcome.nu[p] == 0 && outcome.kappa[p] != 0.0) return false;
  for (Eigen::Index j = 0; j < dm.varphi.size(); ++j)
    if (dm.varphi[j] == 0 && dm.phi[j] != 0.0) return false;
  for (Eigen::Index j = 0; j < dm.zeta.rows(); ++j)
    for (Eigen::Index p = 0; p < dm.zeta.cols(); ++p)
      if (dm.zeta(j, p) == 0 && dm.theta(j, p) != 0.0) return false;
  return true;
}

Eigen::MatrixXd lambda_matrix(const DmParams& dm, const Dataset& data) {
  const int N = data.n();
  const int J = data.num_taxa();
  if (dm.alpha.size() != J || dm.phi.size() != J)
    throw DimensionError("lambda_matrix: DM parameter length != J");
  if (dm.theta.cols() != data.num_covariates_dm())
    throw DimensionError("lambda_matrix: theta columns != P_dm");
  Eigen::MatrixXd lambda(N, J);
  for (int i = 0; i < N; ++i) {
    const double t = static_cast<double>(data.treatment[i]);
    for (int j = 0; j < J; ++j) {
      double v = dm.alpha[j] + dm.phi[j] * t;
      for (int p = 0; p < data.num_covariates_dm(); ++p)
        v += dm.theta(j, p) * data.covariates_dm(i, p);
      lambda(i, j) = v;
    }
  }
  return lambda;
}

Eigen::MatrixXd gamma_concentrations(const DmParams& dm, const Dataset& data) {
  Eigen::MatrixXd lambda = lambda_matrix(dm, data);
  for (int i = 0; i < lambda.rows(); ++i) {
    for (int j = 0; j < lambda.cols(); ++j) {
      if (lambda(i, j) > kMaxLambda) {
        std::ostringstream msg;
        msg << "gamma_concentrations: linear predictor overflow at subject " << i
            << ", taxon " << j << " (lambda = " << lambda(i, j) << ")";
        throw NumericError(msg.str());
      }
    }
  }
  return lambda.array().exp().matrix();
}

double log_lik_outcome(const OutcomeParams& state, const Eigen::MatrixXd& balances,
                       const Dataset& data) {
  const int N = data.n();
  if (!(state.sigma2 > 0.0)) throw DomainError("log_lik_outcome: sigma2 must be positive");
  if (balances.rows() != N || balances.cols() != data.num_taxa() - 1)
    throw DimensionError("log_lik_outcome: balance matrix shape mismatch");
  if (state.beta.size() != balances.cols())
    throw DimensionError("log_lik_outcome: beta length mismatch");
  if (state.kappa.size() != data.num_covariates())
    throw DimensionError("log_lik_outcome: kappa length mismatch");

  double ll = 0.0;
  for (int i = 0; i < N; ++i) {
    double pred = state.c0 + state.c1 * static_cast<double>(data.treatment[i]);
    pred += balances.row(i).dot(state.beta);
    for (int p = 0; p < data.num_covariates(); ++p)
      pred += state.kappa[p] * data.covariates(i, p);
    ll += log_normal_pdf(data.outcome[i], pred, state.sigma2);
  }
  return ll;
}

double log_prior_state(const OutcomeParams& outcome, const DmParams& dm,
                       const Hyperparameters& hp) {
  double lp = 0.0;
  const double s2 = outcome.sigma2;

  // sigma2 ~ InverseGamma(a0, b0)
  lp += hp.a0 * std::log(hp.b0) - log_gamma(hp.a0) - (hp.a0 + 1.0) * std::log(s2) - hp.b0 / s2;

  // always-included intercept and treatment effect
  lp += log_normal_pdf(outcome.c0, 0.0, hp.h_c * s2);
  lp += log_normal_pdf(outcome.c1, 0.0, hp.h_c * s2);

  for (Eigen::Index j = 0; j < outcome.xi.size(); ++j) {
    lp += log_beta_bernoulli(outcome.xi[j], hp.a_xi, hp.b_xi);
    if (outcome.xi[j] == 1) lp += log_normal_pdf(outcome.beta[j], 0.0, hp.h_beta * s2);
  }
  for (Eigen::Index p = 0; p < outcome.nu.size(); ++p) {
    lp += log_beta_bernoulli(outcome.nu[p], hp.a_nu, hp.b_nu);
    if (outcome.nu[p] == 1) lp += log_normal_pdf(outcome.kappa[p], 0.0, hp.h_kappa * s2);
  }

  for (Eigen::Index j = 0; j < dm.alpha.size(); ++j) {
    lp += log_normal_pdf(dm.alpha[j], 0.0, hp.sigma2_alpha);
    lp += log_beta_bernoulli(dm.varphi[j], hp.a_varphi, hp.b_varphi);
    if (dm.varphi[j] == 1) lp += log_normal_pdf(dm.phi[j], 0.0, hp.r2[j]);
    for (Eigen::Index p = 0; p < dm.zeta.cols(); ++p) {
      lp += log_beta_bernoulli(dm.zeta(j, p), hp.a_zeta, hp.b_zeta);
      if (dm.zeta(j, p) == 1) lp += log_normal_pdf(dm.theta(j, p), 0.0, hp.r2[j]);
    }
  }
  return lp;
}

}  // namespace cmbvs
