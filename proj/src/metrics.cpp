#include "cmbvs/metrics.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "cmbvs/parallel.hpp"
#include "cmbvs/rng.hpp"

namespace cmbvs {

SelectionScores score_selection(const std::vector<bool>& selected,
                                const std::vector<bool>& truth) {
  if (selected.size() != truth.size())
    throw DimensionError("score_selection: vectors differ in length");
  SelectionScores s;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (truth[j] && selected[j]) ++s.tp;
    if (truth[j] && !selected[j]) ++s.fn;
    if (!truth[j] && selected[j]) ++s.fp;
    if (!truth[j] && !selected[j]) ++s.tn;
  }
  s.sens = (s.tp + s.fn) > 0 ? static_cast<double>(s.tp) / (s.tp + s.fn) : 0.0;
  s.spec = (s.tn + s.fp) > 0 ? static_cast<double>(s.tn) / (s.tn + s.fp) : 0.0;
  const double d1 = static_cast<double>(s.tp + s.fp);
  const double d2 = static_cast<double>(s.tp + s.fn);
  const double d3 = static_cast<double>(s.tn + s.fp);
  const double d4 = static_cast<double>(s.tn + s.fn);
  if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0 || d4 == 0.0) {
    s.mcc = 0.0;
  } else {
    const double num = static_cast<double>(s.tp) * s.tn - static_cast<double>(s.fp) * s.fn;
    s.mcc = num / std::sqrt(d1 * d2 * d3 * d4);
  }
  return s;
}

EstimationScores score_estimation(const std::vector<EffectSummary>& summaries,
                                  const std::vector<double>& truths) {
  if (summaries.empty()) throw UsageError("score_estimation: no summaries");
  if (summaries.size() != truths.size())
    throw DimensionError("score_estimation: summaries and truths differ in length");
  EstimationScores s;
  for (std::size_t r = 0; r < summaries.size(); ++r) {
    const double err = summaries[r].mean - truths[r];
    s.bias += err;
    s.mse += err * err;
    if (summaries[r].lower <= truths[r] && truths[r] <= summaries[r].upper) s.coverage += 1.0;
  }
  const double count = static_cast<double>(summaries.size());
  s.bias /= count;
  s.mse /= count;
  s.coverage /= count;
  return s;
}

namespace {

struct ReplicateResult {
  bool ok = false;
  std::string failure;
  std::vector<SelectionScores> per_method;
  ScoreReport::ReplicateEstimate estimate;
  EffectSummary direct;
  EffectSummary overall;
};

MediationResult run_method(Strategy method, const Dataset& data, const Hyperparameters& hp,
                           const SamplerConfig& cfg, const StrategyConfig& strategy_base,
                           const PosteriorTrace& identity_fit) {
  StrategyConfig strategy = strategy_base;
  strategy.strategy = method;
  switch (method) {
    case Strategy::kCmbvs1:
      return select_cmbvs1(data, hp, cfg, strategy, &identity_fit);
    case Strategy::kCmbvs2:
      return select_cmbvs2(identity_fit, data, strategy);
    case Strategy::kCmbvs3:
      return select_cmbvs3(data, hp, cfg, strategy, &identity_fit);
  }
  throw UsageError("run_method: unknown strategy");
}

}  // namespace

ScoreReport run_study(const ScenarioSpec& spec, long replicates,
                      const std::vector<Strategy>& methods, const Hyperparameters& hp,
                      const SamplerConfig& cfg, const StrategyConfig& strategy_base,
                      int workers) {
  spec.validate();
  if (replicates < 1) throw UsageError("run_study: need at least one replicate");
  if (methods.empty()) throw UsageError("run_study: no methods requested");

  std::vector<ReplicateResult> results(static_cast<std::size_t>(replicates));
  parallel_for(static_cast<std::size_t>(replicates), workers, [&](std::size_t r) {
    ReplicateResult& slot = results[r];
    try {
      ScenarioSpec rep_spec = spec;
      rep_spec.seed = derive_seed(spec.seed, 1000 + r);
      const SimulatedData sim = generate(rep_spec);

      SamplerConfig rep_cfg = cfg;
      rep_cfg.seed = derive_seed(spec.seed, 2000 + r);

      const PosteriorTrace identity_fit = run_identity_fit(sim.data, hp, rep_cfg);
      for (Strategy method : methods) {
        const MediationResult result =
            run_method(method, sim.data, hp, rep_cfg, strategy_base, identity_fit);
        slot.per_method.push_back(score_selection(result.selected, sim.truth));
      }

      slot.direct = direct_effect(identity_fit, strategy_base.ci_level);
      slot.overall = overall_indirect(identity_fit,
                                      PartitionScheme::sequential(sim.data.num_taxa()),
                                      Eigen::VectorXd(0), -1, strategy_base.ci_level);
      slot.estimate = {slot.direct.mean,  slot.direct.lower,  slot.direct.upper,
                       slot.overall.mean, slot.overall.lower, slot.overall.upper,
                       sim.true_direct,   sim.true_overall};
      slot.ok = true;
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "replicate " << r << ": " << e.what();
      slot.failure = msg.str();
    }
  });

  ScoreReport report;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    ScoreReport::MethodRow row;
    row.strategy = methods[m];
    report.methods.push_back(row);
  }

  std::vector<EffectSummary> direct_summaries, overall_summaries;
  std::vector<double> direct_truths, overall_truths;
  for (auto& slot : results) {
    if (!slot.ok) {
      report.failures.push_back(slot.failure);
      continue;
    }
    ++report.replicates_completed;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      report.methods[m].per_replicate.push_back(slot.per_method[m]);
      report.methods[m].sens += slot.per_method[m].sens;
      report.methods[m].spec += slot.per_method[m].spec;
      report.methods[m].mcc += slot.per_method[m].mcc;
    }
    report.estimates.push_back(slot.estimate);
    direct_summaries.push_back(std::move(slot.direct));
    overall_summaries.push_back(std::move(slot.overall));
    direct_truths.push_back(slot.estimate.true_direct);
    overall_truths.push_back(slot.estimate.true_overall);
  }
  if (report.replicates_completed == 0)
    throw NumericError("run_study: every replicate failed: " +
                       (report.failures.empty() ? std::string("unknown") : report.failures[0]));

  const double done = static_cast<double>(report.replicates_completed);
  for (auto& row : report.methods) {
    row.sens /= done;
    row.spec /= done;
    row.mcc /= done;
  }
  report.direct = score_estimation(direct_summaries, direct_truths);
  report.overall = score_estimation(overall_summaries, overall_truths);
  return report;
}

std::vector<SweepCell> sensitivity_grid(const Hyperparameters& base, int J) {
  std::vector<SweepCell> cells;
  cells.push_back({"baseline", base});

  auto with_inclusion = [&](const char* label, double a, double b) {
    Hyperparameters hp = base;
    hp.a_xi = hp.a_nu = hp.a_varphi = hp.a_zeta = a;
    hp.b_xi = hp.b_nu = hp.b_varphi = hp.b_zeta = b;
    cells.push_back({label, hp});
  };
  with_inclusion("prpi_1pct", 0.02, 1.98);
  with_inclusion("prpi_10pct", 0.2, 1.8);

  for (double r2 : {5.0, 20.0}) {
    Hyperparameters hp = base;
    hp.r2 = Eigen::VectorXd::Constant(J, r2);
    std::ostringstream label;
    label << "r2_" << static_cast<int>(r2);
    cells.push_back({label.str(), hp});
  }
  for (double h : {5.0, 20.0}) {
    Hyperparameters hp = base;
    hp.h_c = hp.h_beta = hp.h_kappa = h;
    std::ostringstream label;
    label << "h_" << static_cast<int>(h);
    cells.push_back({label.str(), hp});
  }
  for (double ab : {0.1, 10.0}) {
    Hyperparameters hp = base;
    hp.a0 = hp.b0 = ab;
    std::ostringstream label;
    label << "a0b0_" << ab;
    cells.push_back({label.str(), hp});
  }
  return cells;
}

SweepReport sensitivity_sweep(const SimulatedData& reference,
                              const Hyperparameters& base_hp, const SamplerConfig& cfg,
                              const std::vector<Strategy>& methods,
                              const StrategyConfig& strategy_base, int workers) {
  if (methods.empty()) throw UsageError("sensitivity_sweep: no methods requested");
  const auto grid = sensitivity_grid(base_hp, reference.data.num_taxa());
  SweepReport report;
  report.cells.resize(grid.size());

  parallel_for(grid.size(), workers, [&](std::size_t c) {
    const auto& cell = grid[c];
    SweepReport::Cell out;
    out.label = cell.label;
    const PosteriorTrace identity_fit = run_identity_fit(reference.data, cell.hp, cfg);
    for (Strategy method : methods) {
      const MediationResult result =
          run_method(method, reference.data, cell.hp, cfg, strategy_base, identity_fit);
      ScoreReport::MethodRow row;
      row.strategy = method;
      const SelectionScores scores = score_selection(result.selected, reference.truth);
      row.sens = scores.sens;
      row.spec = scores.spec;
      row.mcc = scores.mcc;
      row.per_replicate.push_back(scores);
      out.methods.push_back(std::move(row));
    }
    report.cells[c] = std::move(out);
  });
  return report;
}

}  // namespace cmbvs
