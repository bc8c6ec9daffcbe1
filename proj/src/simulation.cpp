#include "cmbvs/simulation.hpp"

#include <cmath>

#include "cmbvs/rng.hpp"
#include "cmbvs/special_functions.hpp"

namespace cmbvs {

namespace {

Eigen::VectorXd leading_effects(int J, std::initializer_list<double> head) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(J);
  int j = 0;
  for (double x : head) {
    if (j >= J) break;
    v[j++] = x;
  }
  return v;
}

// Confounder loadings of the misspecified scenarios.
Eigen::VectorXd nu1_loadings(int J) { return leading_effects(J, {0.8, 0, 0, 0, 1.2}); }
Eigen::VectorXd nu2_loadings(int J) { return leading_effects(J, {0, 1.2, 0, 0.8}); }
constexpr double kKappaConfounder = 1.2;

Eigen::VectorXd dirichlet(Rng& rng, const Eigen::VectorXd& concentration) {
  Eigen::VectorXd draw(concentration.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < concentration.size(); ++j) {
    double g = rng.gamma_rate(concentration[j], 1.0);
    if (g < 1e-300) g = 1e-300;
    draw[j] = g;
    total += g;
  }
  return draw / total;
}

Eigen::VectorXi multinomial(Rng& rng, long total, const Eigen::VectorXd& p) {
  const Eigen::Index J = p.size();
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(J);
  long remaining = total;
  double mass = 1.0;
  for (Eigen::Index j = 0; j + 1 < J && remaining > 0; ++j) {
    const double q = std::min(1.0, std::max(0.0, p[j] / mass));
    const long c = rng.binomial(remaining, q);
    counts[j] = static_cast<int>(c);
    remaining -= c;
    mass -= p[j];
    if (mass <= 0.0) break;
  }
  counts[J - 1] += static_cast<int>(remaining);
  return counts;
}

}  // namespace

ScenarioSpec ScenarioSpec::standard(int scenario, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.scenario = scenario;
  spec.seed = seed;
  spec.phi_true = leading_effects(spec.J, {1.0, 1.2, 1.5});
  spec.beta_log_true = leading_effects(spec.J, {3.0, -1.5, -1.5});
  return spec;
}

ScenarioSpec ScenarioSpec::application_like(int scenario, std::uint64_t seed) {
  ScenarioSpec spec;
  spec.scenario = scenario;
  spec.seed = seed;
  spec.n = 36;
  spec.J = 36;
  spec.p_treat = 2.0 / 3.0;  // 2:1 treated-to-control assignment
  spec.phi_true = leading_effects(spec.J, {0.7, 1.0, 1.2});
  spec.beta_log_true = leading_effects(spec.J, {1.8, -1.0, -0.8});
  return spec;
}

void ScenarioSpec::validate() const {
  if (scenario < 1 || scenario > 4) throw ConfigError("ScenarioSpec: scenario must be 1..4");
  if (n < 1 || J < 2) throw ConfigError("ScenarioSpec: need n >= 1 and J >= 2");
  if (!(p_treat > 0.0) || !(p_treat < 1.0))
    throw ConfigError("ScenarioSpec: p_treat must lie in (0,1)");
  if (phi_true.size() != J || beta_log_true.size() != J)
    throw DimensionError("ScenarioSpec: effect vectors must have length J");
  if (library_min < 1 || library_max < library_min)
    throw ConfigError("ScenarioSpec: invalid library-size range");
}

double true_overall_indirect(const Eigen::VectorXd& alpha, const Eigen::VectorXd& phi,
                             const Eigen::VectorXd& beta_log) {
  const Eigen::Index J = alpha.size();
  Eigen::VectorXd gamma1(J), gamma0(J);
  double total1 = 0.0, total0 = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) {
    gamma1[j] = std::exp(alpha[j] + phi[j]);
    gamma0[j] = std::exp(alpha[j]);
    total1 += gamma1[j];
    total0 += gamma0[j];
  }
  const double d1 = digamma(total1), d0 = digamma(total0);
  double effect = 0.0;
  for (Eigen::Index j = 0; j < J; ++j) {
    if (beta_log[j] == 0.0) continue;
    effect += beta_log[j] * ((digamma(gamma1[j]) - d1) - (digamma(gamma0[j]) - d0));
  }
  return effect;
}

SimulatedData generate(const ScenarioSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const int n = spec.n;
  const int J = spec.J;
  const bool confound_dm = spec.scenario == 2 || spec.scenario == 4;
  const bool confound_outcome = spec.scenario == 3 || spec.scenario == 4;

  SimulatedData out;
  out.phi_true = spec.phi_true;
  out.beta_log_true = spec.beta_log_true;
  out.alpha_true.resize(J);
  for (int j = 0; j < J; ++j) out.alpha_true[j] = -2.0 + 2.5 * rng.uniform();

  Eigen::VectorXi treatment(n);
  for (int i = 0; i < n; ++i) treatment[i] = rng.bernoulli(spec.p_treat) ? 1 : 0;

  Eigen::VectorXd u1 = Eigen::VectorXd::Zero(n), u2 = Eigen::VectorXd::Zero(n);
  if (confound_dm || confound_outcome) {
    for (int i = 0; i < n; ++i) {
      u1[i] = rng.bernoulli(0.5) ? 1.0 : 0.0;
      u2[i] = rng.normal(0.0, 1.0);
    }
  }
  const Eigen::VectorXd nu1 = nu1_loadings(J);
  const Eigen::VectorXd nu2 = nu2_loadings(J);

  Eigen::MatrixXi counts(n, J);
  Eigen::VectorXd outcome(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd concentration(J);
    for (int j = 0; j < J; ++j) {
      double lambda = out.alpha_true[j] + spec.phi_true[j] * treatment[i];
      if (confound_dm) lambda += nu1[j] * u1[i] + nu2[j] * u2[i];
      concentration[j] = std::exp(lambda);
    }
    const Eigen::VectorXd psi = dirichlet(rng, concentration);
    const long depth = rng.uniform_int(spec.library_min, spec.library_max);
    counts.row(i) = multinomial(rng, depth, psi).transpose();

    double y = spec.c0 + spec.c1 * treatment[i];
    for (int j = 0; j < J; ++j) {
      if (spec.beta_log_true[j] != 0.0) y += spec.beta_log_true[j] * std::log(psi[j]);
    }
    if (confound_outcome) y += kKappaConfounder * u1[i] + kKappaConfounder * u2[i];
    outcome[i] = y + rng.normal(0.0, 1.0);
  }

  out.data.counts = std::move(counts);
  out.data.outcome = std::move(outcome);
  out.data.treatment = std::move(treatment);
  out.data.covariates.resize(n, 0);
  out.data.covariates_dm.resize(n, 0);
  out.data.validate();

  out.truth.assign(static_cast<std::size_t>(J), false);
  for (int j = 0; j < J; ++j)
    out.truth[static_cast<std::size_t>(j)] =
        spec.phi_true[j] != 0.0 && spec.beta_log_true[j] != 0.0;
  out.true_direct = spec.c1;
  out.true_overall = true_overall_indirect(out.alpha_true, spec.phi_true, spec.beta_log_true);
  return out;
}

}  // namespace cmbvs
