#include <doctest.h>

#include <cmath>

#include "cmbvs/model.hpp"
#include "cmbvs/rng.hpp"
#include "cmbvs/special_functions.hpp"
#include "test_util.hpp"

using namespace cmbvs;
using namespace cmbvs::test;

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Naive per-observation density sum, the independence oracle for the fast path.
double outcome_loglik_oracle(const OutcomeParams& s, const Eigen::MatrixXd& balances,
                             const Dataset& data) {
  double ll = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    double pred = s.c0 + s.c1 * data.treatment[i];
    for (int j = 0; j < balances.cols(); ++j) pred += s.beta[j] * balances(i, j);
    for (int p = 0; p < data.num_covariates(); ++p) pred += s.kappa[p] * data.covariates(i, p);
    const double z = (data.outcome[i] - pred) / std::sqrt(s.sigma2);
    ll += -0.5 * kLog2Pi - 0.5 * std::log(s.sigma2) - 0.5 * z * z;
  }
  return ll;
}

}  // namespace

TEST_CASE("log_lik_outcome basics") {
  {
    Dataset data = toy_dataset(counts_matrix({{1, 1}}), dvec({0.0}), ivec({0}));
    OutcomeParams s = OutcomeParams::zeros(2, 0);
    Eigen::MatrixXd balances = Eigen::MatrixXd::Zero(1, 1);
    CHECK(log_lik_outcome(s, balances, data) == doctest::Approx(-0.5 * kLog2Pi).epsilon(1e-14));
  }
  {
    // perfect fit: y = c0 exactly
    const int n = 7;
    Dataset data = toy_dataset(Eigen::MatrixXi::Constant(n, 2, 1),
                               Eigen::VectorXd::Constant(n, 2.5),
                               Eigen::VectorXi::Zero(n));
    OutcomeParams s = OutcomeParams::zeros(2, 0);
    s.c0 = 2.5;
    Eigen::MatrixXd balances = Eigen::MatrixXd::Zero(n, 1);
    CHECK(log_lik_outcome(s, balances, data) ==
          doctest::Approx(-(n / 2.0) * kLog2Pi).epsilon(1e-14));
  }
}

TEST_CASE("log_lik_outcome matches the brute-force oracle") {
  Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 5, J = 4, P = 2;
    Eigen::MatrixXi counts = Eigen::MatrixXi::Constant(n, J, 3);
    Eigen::VectorXd y(n);
    Eigen::VectorXi t(n);
    Eigen::MatrixXd x(n, P);
    for (int i = 0; i < n; ++i) {
      y[i] = rng.normal(0, 2);
      t[i] = rng.bernoulli(0.5) ? 1 : 0;
      for (int p = 0; p < P; ++p) x(i, p) = rng.normal(0, 1);
    }
    Dataset data = toy_dataset(counts, y, t, x);
    Eigen::MatrixXd balances(n, J - 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < J - 1; ++j) balances(i, j) = rng.normal(0, 1);
    OutcomeParams s = OutcomeParams::zeros(J, P);
    s.c0 = rng.normal(0, 1);
    s.c1 = rng.normal(0, 1);
    s.sigma2 = 0.3 + rng.uniform();
    for (int j = 0; j < J - 1; ++j) {
      s.xi[j] = 1;
      s.beta[j] = rng.normal(0, 1);
    }
    s.nu[0] = 1;
    s.kappa[0] = rng.normal(0, 1);
    CHECK(log_lik_outcome(s, balances, data) ==
          doctest::Approx(outcome_loglik_oracle(s, balances, data)).epsilon(1e-10));
  }
}

TEST_CASE("log_prior_state marginals and additivity") {
  const int J = 3, P = 1;
  Hyperparameters hp = Hyperparameters::defaults(J);
  OutcomeParams empty = OutcomeParams::zeros(J, P);
  DmParams dm = DmParams::zeros(J, 1);

  const double base = log_prior_state(empty, dm, hp);

  // each excluded indicator contributes log(1/2) under Beta(1,1): flipping one
  // indicator on with coefficient value 0 swaps log(1/2) for log(1/2) plus the
  // slab density at zero
  OutcomeParams one_in = empty;
  one_in.xi[0] = 1;
  one_in.beta[0] = 0.0;
  const double with_slab = log_prior_state(one_in, dm, hp);
  CHECK(with_slab - base ==
        doctest::Approx(log_normal_pdf(0.0, 0.0, hp.h_beta * 1.0)).epsilon(1e-12));

  // block additivity: changing sigma2 only moves the sigma2, c0/c1 and
  // included-slab blocks
  OutcomeParams scaled = empty;
  scaled.sigma2 = 2.0;
  const double delta = log_prior_state(scaled, dm, hp) - base;
  const double expected = (hp.a0 * std::log(hp.b0) - log_gamma(hp.a0) -
                           (hp.a0 + 1.0) * std::log(2.0) - hp.b0 / 2.0) -
                          (hp.a0 * std::log(hp.b0) - log_gamma(hp.a0) - hp.b0) +
                          2.0 * (log_normal_pdf(0.0, 0.0, 2.0) - log_normal_pdf(0.0, 0.0, 1.0));
  CHECK(delta == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_prior_state matches a term-by-term oracle on a 3-taxon toy") {
  const int J = 3, P = 2, P_dm = 1;
  Hyperparameters hp = Hyperparameters::defaults(J);
  hp.a_xi = 0.2;
  hp.b_xi = 1.8;
  hp.a_varphi = 2.0;
  hp.b_varphi = 3.0;

  OutcomeParams s = OutcomeParams::zeros(J, P);
  s.c0 = 0.4;
  s.c1 = -1.1;
  s.sigma2 = 0.7;
  s.xi << 1, 0;
  s.beta << 0.9, 0.0;
  s.nu << 0, 1;
  s.kappa << 0.0, -0.3;

  DmParams dm = DmParams::zeros(J, P_dm);
  dm.alpha << 0.1, -0.5, 0.3;
  dm.varphi << 1, 0, 1;
  dm.phi << 1.2, 0.0, -0.8;
  dm.zeta << 1, 0, 0;
  dm.theta << 0.5, 0.0, 0.0;

  double oracle = 0.0;
  oracle += hp.a0 * std::log(hp.b0) - log_gamma(hp.a0) -
            (hp.a0 + 1.0) * std::log(s.sigma2) - hp.b0 / s.sigma2;
  oracle += log_normal_pdf(s.c0, 0, hp.h_c * s.sigma2);
  oracle += log_normal_pdf(s.c1, 0, hp.h_c * s.sigma2);
  oracle += std::log(hp.a_xi / (hp.a_xi + hp.b_xi)) + log_normal_pdf(0.9, 0, hp.h_beta * s.sigma2);
  oracle += std::log(hp.b_xi / (hp.a_xi + hp.b_xi));
  oracle += std::log(0.5) + std::log(0.5) + log_normal_pdf(-0.3, 0, hp.h_kappa * s.sigma2);
  for (int j = 0; j < J; ++j) oracle += log_normal_pdf(dm.alpha[j], 0, hp.sigma2_alpha);
  oracle += std::log(hp.a_varphi / (hp.a_varphi + hp.b_varphi)) * 2 +
            std::log(hp.b_varphi / (hp.a_varphi + hp.b_varphi));
  oracle += log_normal_pdf(1.2, 0, hp.r2[0]) + log_normal_pdf(-0.8, 0, hp.r2[2]);
  oracle += std::log(0.5) * 3 + log_normal_pdf(0.5, 0, hp.r2[0]);

  CHECK(log_prior_state(s, dm, hp) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("gamma_concentrations") {
  Dataset data = toy_dataset(counts_matrix({{2, 3}, {1, 4}}), dvec({0.1, -0.2}), ivec({1, 0}));
  DmParams dm = DmParams::zeros(2, 0);

  auto ones = gamma_concentrations(dm, data);
  CHECK((ones.array() - 1.0).abs().maxCoeff() == 0.0);

  dm.alpha << 1.0, 0.0;
  dm.varphi << 1, 0;
  dm.phi << 1.0, 0.0;
  auto g = gamma_concentrations(dm, data);
  CHECK(g(0, 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));  // treated subject
  CHECK(g(1, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));  // control subject
  CHECK(g(0, 1) == doctest::Approx(1.0));

  // monotone in the linear predictor
  DmParams bigger = dm;
  bigger.alpha[0] = 1.5;
  CHECK(gamma_concentrations(bigger, data)(0, 0) > g(0, 0));

  DmParams overflow = dm;
  overflow.alpha[0] = 800.0;
  CHECK_THROWS_AS(gamma_concentrations(overflow, data), cmbvs::NumericError);
}

TEST_CASE("exclusion coupling checker") {
  OutcomeParams s = OutcomeParams::zeros(3, 1);
  DmParams dm = DmParams::zeros(3, 1);
  CHECK(exclusion_coupling_holds(s, dm));
  s.beta[0] = 0.5;  // excluded but nonzero
  CHECK_FALSE(exclusion_coupling_holds(s, dm));
  s.xi[0] = 1;
  CHECK(exclusion_coupling_holds(s, dm));
  dm.theta(2, 0) = -0.1;
  CHECK_FALSE(exclusion_coupling_holds(s, dm));
  dm.zeta(2, 0) = 1;
  CHECK(exclusion_coupling_holds(s, dm));
}
