#include "cmbvs/estimands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmbvs/parallel.hpp"
#include "cmbvs/special_functions.hpp"

namespace cmbvs {

namespace {

PartitionScheme scheme_from_trace(const PosteriorTrace& trace) {
  return PartitionScheme::sequential(trace.J, trace.taxon_order);
}

void summarize(EffectSummary& s, double ci_level) {
  if (s.samples.empty()) throw UsageError("EffectSummary: no samples");
  s.mean = std::accumulate(s.samples.begin(), s.samples.end(), 0.0) /
           static_cast<double>(s.samples.size());
  auto [lo, hi] = equal_tail_interval(s.samples, ci_level);
  s.lower = lo;
  s.upper = hi;
}

bool interval_excludes_zero(const EffectSummary& s) {
  return s.lower > 0.0 || s.upper < 0.0;
}

// Taxon order with `first` leading and the remaining taxa in ascending order.
std::vector<int> order_taxon_first(int J, int first) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(J));
  order.push_back(first);
  for (int j = 0; j < J; ++j)
    if (j != first) order.push_back(j);
  return order;
}

}  // namespace

void StrategyConfig::validate() const {
  if (!(mppi_threshold > 0.0) || !(mppi_threshold < 1.0))
    throw ConfigError("StrategyConfig: mppi_threshold must lie in (0,1)");
  if (!(ci_level > 0.0) || !(ci_level < 1.0))
    throw ConfigError("StrategyConfig: ci_level must lie in (0,1)");
  if (workers < 1) throw ConfigError("StrategyConfig: workers must be at least 1");
}

std::pair<double, double> equal_tail_interval(std::vector<double> values, double level) {
  if (values.empty()) throw UsageError("equal_tail_interval: no values");
  if (!(level > 0.0) || !(level < 1.0))
    throw ConfigError("equal_tail_interval: level must lie in (0,1)");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double h = p * (static_cast<double>(values.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double w = h - std::floor(h);
    return (1.0 - w) * values[lo] + w * values[hi];
  };
  const double tail = (1.0 - level) / 2.0;
  return {quantile(tail), quantile(1.0 - tail)};
}

Eigen::VectorXd expected_log_psi(const DmParams& dm, int treatment,
                                 const Eigen::VectorXd& x_profile) {
  const int J = static_cast<int>(dm.alpha.size());
  if (x_profile.size() != dm.theta.cols())
    throw DimensionError("expected_log_psi: covariate profile length != P_dm");
  Eigen::VectorXd gamma(J);
  double total = 0.0;
  for (int j = 0; j < J; ++j) {
    double lam = dm.alpha[j] + dm.phi[j] * static_cast<double>(treatment);
    for (int p = 0; p < x_profile.size(); ++p) lam += dm.theta(j, p) * x_profile[p];
    gamma[j] = std::exp(lam);
    if (!(gamma[j] > 0.0) || !std::isfinite(gamma[j]))
      throw DomainError("expected_log_psi: concentration out of range");
    total += gamma[j];
  }
  const double psi_total = digamma(total);
  Eigen::VectorXd out(J);
  for (int j = 0; j < J; ++j) out[j] = digamma(gamma[j]) - psi_total;
  return out;
}

Eigen::VectorXd expected_balance(const DmParams& dm, const PartitionScheme& scheme,
                                 int treatment, const Eigen::VectorXd& x_profile) {
  // balances_from_log applies the coefficient rows to any vector
  return scheme.balances_from_log(expected_log_psi(dm, treatment, x_profile));
}

Eigen::VectorXd relative_effect_coefficients(const Eigen::VectorXd& beta,
                                             const PartitionScheme& scheme) {
  const int J = scheme.num_parts();
  if (beta.size() != J - 1)
    throw DimensionError("relative_effect_coefficients: beta length != J-1");
  const auto& order = scheme.taxon_order();
  Eigen::VectorXd coef(J);
  double carried = 0.0;  // sum over earlier rows of beta_m * s_m / D_m
  for (int m = 0; m < J - 1; ++m) {
    const double block = static_cast<double>(J - 1 - m);
    const double scale = std::sqrt(block / (block + 1.0));
    coef[order[m]] = beta[m] * scale - carried;
    carried += beta[m] * scale / block;
  }
  coef[order[J - 1]] = -carried;
  return coef;
}

EffectSummary direct_effect(const PosteriorTrace& trace, double ci_level) {
  if (trace.size() == 0) throw UsageError("direct_effect: empty trace");
  EffectSummary s;
  s.name = "direct";
  s.samples.reserve(trace.size());
  for (const auto& o : trace.outcome) s.samples.push_back(o.c1);
  summarize(s, ci_level);
  return s;
}

EffectSummary overall_indirect(const PosteriorTrace& trace, const PartitionScheme& scheme,
                               const Eigen::VectorXd& x_profile, int profile_id,
                               double ci_level) {
  if (trace.size() == 0) throw UsageError("overall_indirect: empty trace");
  EffectSummary s;
  s.name = "overall_indirect";
  s.profile = profile_id;
  s.samples.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Eigen::VectorXd theta_gap = expected_log_psi(trace.dm[i], 1, x_profile) -
                                      expected_log_psi(trace.dm[i], 0, x_profile);
    s.samples.push_back(trace.outcome[i].beta.dot(scheme.balances_from_log(theta_gap)));
  }
  summarize(s, ci_level);
  return s;
}

std::vector<EffectSummary> relative_indirect(const PosteriorTrace& trace,
                                             const PartitionScheme& scheme,
                                             const Eigen::VectorXd& x_profile,
                                             int profile_id, double ci_level) {
  if (trace.size() == 0) throw UsageError("relative_indirect: empty trace");
  const int J = trace.J;
  std::vector<EffectSummary> out(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j) {
    out[static_cast<std::size_t>(j)].name = "relative_indirect";
    out[static_cast<std::size_t>(j)].taxon = j;
    out[static_cast<std::size_t>(j)].profile = profile_id;
    out[static_cast<std::size_t>(j)].samples.reserve(trace.size());
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Eigen::VectorXd theta_gap = expected_log_psi(trace.dm[i], 1, x_profile) -
                                      expected_log_psi(trace.dm[i], 0, x_profile);
    const Eigen::VectorXd coef = relative_effect_coefficients(trace.outcome[i].beta, scheme);
    for (int j = 0; j < J; ++j)
      out[static_cast<std::size_t>(j)].samples.push_back(coef[j] * theta_gap[j]);
  }
  for (auto& s : out) summarize(s, ci_level);
  return out;
}

namespace {

// Interval-rule selection shared by CMbvs2 and the second stage of CMbvs3.
MediationResult interval_rule_result(const PosteriorTrace& trace, const Dataset& data,
                                     const StrategyConfig& strategy, Strategy kind) {
  const PartitionScheme scheme = scheme_from_trace(trace);
  const auto profiles = data.unique_dm_profiles();
  MediationResult result;
  result.strategy = kind;
  result.selected.assign(static_cast<std::size_t>(trace.J), false);
  result.mppi_phi = mppi(trace, IndicatorFamily::kVarphi);
  result.direct = direct_effect(trace, strategy.ci_level);
  for (std::size_t p = 0; p < profiles.profile_x.size(); ++p) {
    const int pid = static_cast<int>(p);
    result.overall.push_back(overall_indirect(trace, scheme, profiles.profile_x[p], pid,
                                              strategy.ci_level));
    auto rel = relative_indirect(trace, scheme, profiles.profile_x[p], pid, strategy.ci_level);
    for (auto& s : rel) {
      s.mppi_phi = result.mppi_phi[s.taxon];
      s.selected = interval_excludes_zero(s);
      if (s.selected) result.selected[static_cast<std::size_t>(s.taxon)] = true;
      result.relative.push_back(std::move(s));
    }
  }
  return result;
}

}  // namespace

PosteriorTrace run_identity_fit(const Dataset& data, const Hyperparameters& hp,
                                const SamplerConfig& cfg) {
  SamplerConfig fit_cfg = cfg;
  fit_cfg.seed = derive_seed(cfg.seed, 0);
  fit_cfg.store_psi = false;
  return run_chain(data, hp, fit_cfg, PartitionScheme::sequential(data.num_taxa()));
}

MediationResult select_cmbvs1(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy,
                              const PosteriorTrace* shared_initial) {
  strategy.validate();
  const int J = data.num_taxa();
  const auto profiles = data.unique_dm_profiles();

  // Initial fit under the identity order; doubles as taxon 0's refit.
  const PosteriorTrace initial =
      shared_initial ? *shared_initial : run_identity_fit(data, hp, cfg);
  const Eigen::VectorXd initial_mppi_phi = mppi(initial, IndicatorFamily::kVarphi);

  std::vector<int> refit;
  for (int j = 0; j < J; ++j) {
    if (j == 0 || strategy.exhaustive ||
        initial_mppi_phi[j] >= strategy.mppi_threshold)
      refit.push_back(j);
  }

  struct FitOutcome {
    bool selected = false;
    double mppi_phi_first = 0.0;
    double mppi_xi_first = 0.0;
    std::vector<EffectSummary> relative_first;  // one per profile
  };
  std::vector<FitOutcome> fits(refit.size());

  parallel_for(refit.size(), strategy.workers, [&](std::size_t idx) {
    const int j = refit[idx];
    PosteriorTrace trace;
    if (j == 0) {
      trace = initial;
    } else {
      SamplerConfig fit_cfg = cfg;
      fit_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(j));
      fit_cfg.store_psi = false;
      trace = run_chain(data, hp, fit_cfg,
                        PartitionScheme::sequential(J, order_taxon_first(J, j)));
    }
    const PartitionScheme scheme = scheme_from_trace(trace);
    FitOutcome& out = fits[idx];
    out.mppi_phi_first = mppi(trace, IndicatorFamily::kVarphi)[j];
    out.mppi_xi_first = mppi(trace, IndicatorFamily::kXi)[0];
    out.selected = out.mppi_phi_first >= strategy.mppi_threshold &&
                   out.mppi_xi_first >= strategy.mppi_threshold;
    for (std::size_t p = 0; p < profiles.profile_x.size(); ++p) {
      auto rel = relative_indirect(trace, scheme, profiles.profile_x[p],
                                   static_cast<int>(p), strategy.ci_level);
      out.relative_first.push_back(std::move(rel[static_cast<std::size_t>(j)]));
    }
  });

  MediationResult result;
  result.strategy = Strategy::kCmbvs1;
  result.selected.assign(static_cast<std::size_t>(J), false);
  result.refit_performed.assign(static_cast<std::size_t>(J), false);
  result.mppi_phi = initial_mppi_phi;
  result.direct = direct_effect(initial, strategy.ci_level);
  const PartitionScheme identity = PartitionScheme::sequential(J);
  std::vector<std::vector<EffectSummary>> initial_relative;
  for (std::size_t p = 0; p < profiles.profile_x.size(); ++p) {
    result.overall.push_back(overall_indirect(initial, identity, profiles.profile_x[p],
                                              static_cast<int>(p), strategy.ci_level));
    initial_relative.push_back(relative_indirect(initial, identity, profiles.profile_x[p],
                                                 static_cast<int>(p), strategy.ci_level));
  }

  std::vector<const FitOutcome*> by_taxon(static_cast<std::size_t>(J), nullptr);
  for (std::size_t idx = 0; idx < refit.size(); ++idx)
    by_taxon[static_cast<std::size_t>(refit[idx])] = &fits[idx];

  for (int j = 0; j < J; ++j) {
    if (const FitOutcome* fit = by_taxon[static_cast<std::size_t>(j)]) {
      result.selected[static_cast<std::size_t>(j)] = fit->selected;
      result.refit_performed[static_cast<std::size_t>(j)] = true;
      for (const auto& rel : fit->relative_first) {
        EffectSummary s = rel;
        s.selected = fit->selected;
        s.mppi_phi = fit->mppi_phi_first;
        s.mppi_xi = fit->mppi_xi_first;
        result.relative.push_back(std::move(s));
      }
    } else {
      // Skipped by the schedule: the treatment term already failed in the
      // initial fit, so the joint rule cannot select the taxon. Report its
      // effect from the initial fit.
      for (std::size_t p = 0; p < profiles.profile_x.size(); ++p) {
        EffectSummary s = initial_relative[p][static_cast<std::size_t>(j)];
        s.selected = false;
        s.mppi_phi = initial_mppi_phi[j];
        result.relative.push_back(std::move(s));
      }
    }
  }
  return result;
}

MediationResult select_cmbvs2(const PosteriorTrace& trace, const Dataset& data,
                              const StrategyConfig& strategy) {
  strategy.validate();
  return interval_rule_result(trace, data, strategy, Strategy::kCmbvs2);
}

MediationResult select_cmbvs2(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy) {
  strategy.validate();
  return select_cmbvs2(run_identity_fit(data, hp, cfg), data, strategy);
}

MediationResult select_cmbvs3(const Dataset& data, const Hyperparameters& hp,
                              const SamplerConfig& cfg, const StrategyConfig& strategy,
                              const PosteriorTrace* shared_stage1) {
  strategy.validate();
  const int J = data.num_taxa();

  const PosteriorTrace stage1 =
      shared_stage1 ? *shared_stage1 : run_identity_fit(data, hp, cfg);
  const Eigen::VectorXd stage1_mppi = mppi(stage1, IndicatorFamily::kVarphi);

  // Inactive treatment terms are removed before the second stage; with every
  // term pruned the refit has no treatment path and the interval rule selects
  // nothing.
  UpdateMask mask;
  mask.exclude_phi.assign(static_cast<std::size_t>(J), false);
  for (int j = 0; j < J; ++j)
    mask.exclude_phi[static_cast<std::size_t>(j)] = stage1_mppi[j] < strategy.mppi_threshold;

  SamplerConfig stage2_cfg = cfg;
  stage2_cfg.seed = derive_seed(cfg.seed, 1);
  stage2_cfg.store_psi = false;
  const PosteriorTrace stage2 =
      run_chain(data, hp, stage2_cfg, PartitionScheme::sequential(J), mask);

  MediationResult result = interval_rule_result(stage2, data, strategy, Strategy::kCmbvs3);
  result.mppi_phi = stage1_mppi;  // the pruning decision came from stage 1
  return result;
}

}  // namespace cmbvs
