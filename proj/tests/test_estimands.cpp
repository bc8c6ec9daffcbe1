#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cmbvs/estimands.hpp"
#include "cmbvs/rng.hpp"
#include "cmbvs/simulation.hpp"
#include "cmbvs/special_functions.hpp"
#include "test_util.hpp"

using namespace cmbvs;
using namespace cmbvs::test;

namespace {

DmParams random_dm(Rng& rng, int J, int P_dm, double keep_prob = 0.5) {
  DmParams dm = DmParams::zeros(J, P_dm);
  for (int j = 0; j < J; ++j) {
    dm.alpha[j] = rng.normal(0, 0.8);
    if (rng.uniform() < keep_prob) {
      dm.varphi[j] = 1;
      dm.phi[j] = rng.normal(0, 0.7);
    }
    for (int p = 0; p < P_dm; ++p) {
      if (rng.uniform() < keep_prob) {
        dm.zeta(j, p) = 1;
        dm.theta(j, p) = rng.normal(0, 0.4);
      }
    }
  }
  return dm;
}

OutcomeParams random_outcome(Rng& rng, int J, double keep_prob = 0.5) {
  OutcomeParams s = OutcomeParams::zeros(J, 0);
  s.c0 = rng.normal(0, 1);
  s.c1 = rng.normal(0, 1);
  s.sigma2 = 0.5 + rng.uniform();
  for (int j = 0; j < J - 1; ++j) {
    if (rng.uniform() < keep_prob) {
      s.xi[j] = 1;
      s.beta[j] = rng.normal(0, 1.2);
    }
  }
  return s;
}

PosteriorTrace synthetic_trace(Rng& rng, int J, int P_dm, std::size_t samples,
                               const std::vector<int>& order) {
  PosteriorTrace trace;
  trace.n = 1;
  trace.J = J;
  trace.P = 0;
  trace.P_dm = P_dm;
  trace.taxon_order = order;
  for (std::size_t s = 0; s < samples; ++s) {
    trace.dm.push_back(random_dm(rng, J, P_dm));
    trace.outcome.push_back(random_outcome(rng, J));
  }
  return trace;
}

std::vector<int> identity_order(int J) {
  std::vector<int> order(static_cast<std::size_t>(J));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace

TEST_CASE("equal-tail intervals interpolate order statistics") {
  std::vector<double> values{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto [lo, hi] = equal_tail_interval(values, 0.9);
  CHECK(lo == doctest::Approx(1.45));
  CHECK(hi == doctest::Approx(9.55));
  CHECK(lo <= hi);

  // widening the level widens the interval
  Rng rng(3);
  std::vector<double> xs;
  for (int i = 0; i < 500; ++i) xs.push_back(rng.normal(0, 1));
  auto [l50, u50] = equal_tail_interval(xs, 0.5);
  auto [l90, u90] = equal_tail_interval(xs, 0.9);
  auto [l99, u99] = equal_tail_interval(xs, 0.99);
  CHECK(l99 <= l90);
  CHECK(l90 <= l50);
  CHECK(u50 <= u90);
  CHECK(u90 <= u99);

  CHECK_THROWS_AS(equal_tail_interval({}, 0.95), cmbvs::UsageError);
  CHECK_THROWS_AS(equal_tail_interval({1.0}, 1.5), cmbvs::ConfigError);
}

TEST_CASE("expected_log_psi: digamma identities") {
  // gamma = (1,1,1): each entry is digamma(1) - digamma(3) = -1.5 via the recurrence
  DmParams dm = DmParams::zeros(3, 0);
  const Eigen::VectorXd e = expected_log_psi(dm, 0, Eigen::VectorXd(0));
  for (int j = 0; j < 3; ++j) CHECK(e[j] == doctest::Approx(-1.5).epsilon(1e-14));

  // exchangeable concentrations give a constant vector
  DmParams sym = DmParams::zeros(5, 0);
  sym.alpha.setConstant(0.73);
  const Eigen::VectorXd es = expected_log_psi(sym, 0, Eigen::VectorXd(0));
  CHECK((es.array() - es[0]).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("expected_log_psi: Dirichlet sampling oracle at gamma = (2,1)") {
  DmParams dm = DmParams::zeros(2, 0);
  dm.alpha << std::log(2.0), 0.0;
  const Eigen::VectorXd e = expected_log_psi(dm, 0, Eigen::VectorXd(0));
  // closed form: digamma(2) - digamma(3) = -1/2
  CHECK(e[0] == doctest::Approx(-0.5).epsilon(1e-13));

  Rng rng(123);
  double acc = 0.0;
  const int draws = 1000000;
  for (int s = 0; s < draws; ++s) {
    const double g1 = rng.gamma_rate(2.0, 1.0);
    const double g2 = rng.gamma_rate(1.0, 1.0);
    acc += std::log(g1 / (g1 + g2));
  }
  CHECK(std::abs(acc / draws - e[0]) <= 0.005);
}

TEST_CASE("expected_balance equals the coefficient matrix applied to E[log psi]") {
  Rng rng(9);
  for (int rep = 0; rep < 50; ++rep) {
    const int J = 2 + static_cast<int>(rng.uniform_int(0, 6));
    DmParams dm = random_dm(rng, J, 0);
    auto scheme = PartitionScheme::sequential(J);
    const Eigen::VectorXd direct = expected_balance(dm, scheme, 1, Eigen::VectorXd(0));
    const Eigen::VectorXd lin =
        scheme.ilr_coefficients() * expected_log_psi(dm, 1, Eigen::VectorXd(0));
    CHECK((direct - lin).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // symmetric concentrations: zero balances
  DmParams sym = DmParams::zeros(4, 0);
  sym.alpha.setConstant(-0.2);
  CHECK(expected_balance(sym, PartitionScheme::sequential(4), 0, Eigen::VectorXd(0))
            .cwiseAbs()
            .maxCoeff() <= 1e-13);

  // J = 2 closed form
  DmParams two = DmParams::zeros(2, 0);
  two.alpha << 0.4, -0.3;
  const Eigen::VectorXd elog = expected_log_psi(two, 0, Eigen::VectorXd(0));
  const Eigen::VectorXd b = expected_balance(two, PartitionScheme::sequential(2), 0,
                                             Eigen::VectorXd(0));
  CHECK(b[0] == doctest::Approx(std::sqrt(0.5) * (elog[0] - elog[1])).epsilon(1e-13));
}

TEST_CASE("decomposition identity over random traces") {
  Rng rng(31);
  for (int rep = 0; rep < 120; ++rep) {
    const int J = 2 + static_cast<int>(rng.uniform_int(0, 8));
    const int P_dm = static_cast<int>(rng.uniform_int(0, 2));
    std::vector<int> order = identity_order(J);
    for (int j = J - 1; j > 0; --j) std::swap(order[j], order[rng.uniform_int(0, j)]);
    PosteriorTrace trace = synthetic_trace(rng, J, P_dm, 4, order);
    auto scheme = PartitionScheme::sequential(J, order);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(P_dm);
    for (int p = 0; p < P_dm; ++p) x[p] = rng.normal(0, 1);

    const EffectSummary overall = overall_indirect(trace, scheme, x);
    const auto relative = relative_indirect(trace, scheme, x);
    for (std::size_t s = 0; s < trace.size(); ++s) {
      double sum = 0.0;
      for (const auto& r : relative) sum += r.samples[s];
      CHECK(std::abs(sum - overall.samples[s]) <= 1e-10);
    }
  }
}

TEST_CASE("overall effect is invariant to the taxon order") {
  Rng rng(47);
  for (int rep = 0; rep < 40; ++rep) {
    const int J = 3 + static_cast<int>(rng.uniform_int(0, 5));
    DmParams dm = random_dm(rng, J, 0);
    auto scheme1 = PartitionScheme::sequential(J);
    std::vector<int> order = identity_order(J);
    for (int j = J - 1; j > 0; --j) std::swap(order[j], order[rng.uniform_int(0, j)]);
    auto scheme2 = PartitionScheme::sequential(J, order);

    Eigen::VectorXd beta1(J - 1);
    for (int j = 0; j < J - 1; ++j) beta1[j] = rng.normal(0, 1);
    // the same log-coordinate contrast expressed in the second basis
    const Eigen::VectorXd b_log = scheme1.ilr_coefficients().transpose() * beta1;
    const Eigen::VectorXd beta2 = scheme2.ilr_coefficients() * b_log;

    const Eigen::VectorXd gap = expected_log_psi(dm, 1, Eigen::VectorXd(0)) -
                                expected_log_psi(dm, 0, Eigen::VectorXd(0));
    const double overall1 = beta1.dot(scheme1.balances_from_log(gap));
    const double overall2 = beta2.dot(scheme2.balances_from_log(gap));
    CHECK(overall1 == doctest::Approx(overall2).epsilon(1e-10));
  }
}

TEST_CASE("trivial summaries") {
  // constant c1
  Rng rng(1);
  PosteriorTrace trace = synthetic_trace(rng, 3, 0, 20, identity_order(3));
  for (auto& o : trace.outcome) o.c1 = 1.0;
  const EffectSummary direct = direct_effect(trace);
  CHECK(direct.mean == doctest::Approx(1.0));
  CHECK(direct.lower == doctest::Approx(1.0));
  CHECK(direct.upper == doctest::Approx(1.0));

  // beta identically zero: overall indirect is exactly zero
  for (auto& o : trace.outcome) {
    o.beta.setZero();
    o.xi.setZero();
  }
  const EffectSummary overall =
      overall_indirect(trace, PartitionScheme::sequential(3), Eigen::VectorXd(0));
  CHECK(overall.mean == 0.0);
  CHECK(overall.lower == 0.0);
  CHECK(overall.upper == 0.0);

  // phi and theta identically zero: treatment does not move the concentrations
  PosteriorTrace null_dm = synthetic_trace(rng, 3, 0, 20, identity_order(3));
  for (auto& d : null_dm.dm) {
    d.phi.setZero();
    d.varphi.setZero();
  }
  const EffectSummary overall2 =
      overall_indirect(null_dm, PartitionScheme::sequential(3), Eigen::VectorXd(0));
  CHECK(overall2.mean == 0.0);
  CHECK(overall2.upper == 0.0);
}

TEST_CASE("interval rule: constant-zero samples are never selected") {
  Rng rng(8);
  PosteriorTrace trace = synthetic_trace(rng, 4, 0, 25, identity_order(4));
  for (auto& o : trace.outcome) {
    o.beta.setZero();
    o.xi.setZero();
  }
  Dataset data = toy_dataset(counts_matrix({{1, 1, 1, 1}}), dvec({0.0}), ivec({0}));
  StrategyConfig cfg;
  cfg.strategy = Strategy::kCmbvs2;
  const MediationResult result = select_cmbvs2(trace, data, cfg);
  for (bool s : result.selected) CHECK_FALSE(s);
  for (const auto& e : result.relative) {
    CHECK(e.lower == 0.0);
    CHECK(e.upper == 0.0);
  }
}

TEST_CASE("per-profile estimands collapse to one profile without DM covariates") {
  Dataset data = toy_dataset(counts_matrix({{3, 1}, {2, 2}, {1, 3}}), dvec({0.1, 0.2, -0.1}),
                             ivec({1, 0, 1}));
  const auto profiles = data.unique_dm_profiles();
  CHECK(profiles.profile_x.size() == 1);
  CHECK(profiles.profile_x[0].size() == 0);
  for (int id : profiles.subject_profile) CHECK(id == 0);

  Eigen::MatrixXd xdm(3, 1);
  xdm << 1.0, 0.0, 1.0;
  Dataset with_cov = toy_dataset(counts_matrix({{3, 1}, {2, 2}, {1, 3}}),
                                 dvec({0.1, 0.2, -0.1}), ivec({1, 0, 1}), {}, xdm);
  const auto grouped = with_cov.unique_dm_profiles();
  CHECK(grouped.profile_x.size() == 2);
  CHECK(grouped.subject_profile[0] == grouped.subject_profile[2]);
  CHECK(grouped.subject_profile[0] != grouped.subject_profile[1]);
}

TEST_CASE("strategies on a strong-signal toy") {
  ScenarioSpec spec = ScenarioSpec::standard(1, 6);
  spec.n = 80;
  spec.J = 6;
  spec.phi_true = dvec({1.6, 0, 0, 0, 0, 0});
  spec.beta_log_true = dvec({3.0, 0, 0, 0, 0, 0});
  const SimulatedData sim = generate(spec);

  Hyperparameters hp = Hyperparameters::defaults(spec.J);
  SamplerConfig cfg;
  cfg.iterations = 2000;
  cfg.burn_in = 250;
  cfg.thin = 5;
  cfg.seed = 42;
  cfg.scan = ScanMode::kFull;
  StrategyConfig strategy;

  SUBCASE("cmbvs1 selects the active taxon and the shortcut matches exhaustive") {
    strategy.strategy = Strategy::kCmbvs1;
    const MediationResult shortcut = select_cmbvs1(sim.data, hp, cfg, strategy);
    CHECK(shortcut.selected[0]);
    CHECK(shortcut.mppi_phi[0] > 0.95);

    StrategyConfig full = strategy;
    full.exhaustive = true;
    const MediationResult exhaustive = select_cmbvs1(sim.data, hp, cfg, full);
    REQUIRE(exhaustive.selected.size() == shortcut.selected.size());
    for (std::size_t j = 0; j < shortcut.selected.size(); ++j)
      CHECK(shortcut.selected[j] == exhaustive.selected[j]);
  }

  SUBCASE("cmbvs3 prunes to nothing on null data") {
    ScenarioSpec null_spec = spec;
    null_spec.phi_true.setZero();
    null_spec.beta_log_true.setZero();
    null_spec.seed = 77;
    const SimulatedData null_sim = generate(null_spec);
    strategy.strategy = Strategy::kCmbvs3;
    const MediationResult result = select_cmbvs3(null_sim.data, hp, cfg, strategy);
    for (bool s : result.selected) CHECK_FALSE(s);
  }
}
