#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmbvs/estimands.hpp"
#include "cmbvs/simulation.hpp"

namespace cmbvs {

struct SelectionScores {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  double sens = 0.0, spec = 0.0, mcc = 0.0;
};

// Sensitivity, specificity, and Matthews correlation; MCC is 0 by convention
// when any marginal of its denominator vanishes.
SelectionScores score_selection(const std::vector<bool>& selected,
                                const std::vector<bool>& truth);

struct EstimationScores {
  double bias = 0.0;
  double mse = 0.0;
  double coverage = 0.0;
};

// Bias / MSE of the posterior means and CI coverage against per-replicate
// truths (summaries[r] scored against truths[r]).
EstimationScores score_estimation(const std::vector<EffectSummary>& summaries,
                                  const std::vector<double>& truths);

// Aggregated study output mirroring the selection and estimation tables.
struct ScoreReport {
  struct MethodRow {
    Strategy strategy = Strategy::kCmbvs1;
    double sens = 0.0, spec = 0.0, mcc = 0.0;
    std::vector<SelectionScores> per_replicate;
  };
  struct ReplicateEstimate {
    double direct_mean = 0.0, direct_lower = 0.0, direct_upper = 0.0;
    double overall_mean = 0.0, overall_lower = 0.0, overall_upper = 0.0;
    double true_direct = 0.0, true_overall = 0.0;
  };
  std::vector<MethodRow> methods;
  EstimationScores direct;   // from the identity-order fit of each replicate
  EstimationScores overall;
  std::vector<ReplicateEstimate> estimates;
  std::vector<std::string> failures;  // replicate failures; the study continues
  long replicates_completed = 0;
};

// Replicated scenario study: generates `replicates` data sets with derived
// seeds, runs each requested strategy, and averages the scores. Individual
// replicate failures are recorded without stopping the study.
ScoreReport run_study(const ScenarioSpec& spec, long replicates,
                      const std::vector<Strategy>& methods, const Hyperparameters& hp,
                      const SamplerConfig& cfg, const StrategyConfig& strategy_base,
                      int workers = 1);

// One hyperparameter setting of the sensitivity grid.
struct SweepCell {
  std::string label;
  Hyperparameters hp;
};

// The standard grid: baseline, prior inclusion 1% and 10%, r2 in {5, 20},
// h in {5, 20}, (a0, b0) in {0.1, 10}.
std::vector<SweepCell> sensitivity_grid(const Hyperparameters& base, int J);

struct SweepReport {
  struct Cell {
    std::string label;
    std::vector<ScoreReport::MethodRow> methods;
  };
  std::vector<Cell> cells;
};

// Reruns all requested strategies on one reference data set for every grid
// cell and scores selection against the generative truth.
SweepReport sensitivity_sweep(const SimulatedData& reference,
                              const Hyperparameters& base_hp, const SamplerConfig& cfg,
                              const std::vector<Strategy>& methods,
                              const StrategyConfig& strategy_base, int workers = 1);

}  // namespace cmbvs
