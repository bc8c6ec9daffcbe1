#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmbvs/dataset.hpp"
#include "cmbvs/estimands.hpp"
#include "cmbvs/metrics.hpp"
#include "cmbvs/sampler.hpp"
#include "cmbvs/simulation.hpp"

namespace cmbvs {

// All tabular outputs share one delimited format: a schema-version comment
// line, a header row, comma-separated fields, LF endings.
inline constexpr const char* kTableSchema = "#schema cmbvs.table.v1";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::filesystem::path& path);
void write_table(const std::filesystem::path& path, const Table& table);

// Exact decimal round-trip formatting for doubles.
std::string format_double(double value);

// ---------------------------------------------------------------------------
// Ingestion

struct IngestPaths {
  std::filesystem::path counts;     // subject id column + one column per taxon
  std::filesystem::path outcome;    // subject id + outcome value
  std::filesystem::path treatment;  // subject id + 0/1
  std::optional<std::filesystem::path> covariates;     // outcome-level
  std::optional<std::filesystem::path> covariates_dm;  // DM-level
};

struct IngestReport {
  std::vector<std::string> unmatched;  // rows in side tables without a counts subject
};

// Validated, subject-aligned Dataset. Counts rows are the spine: every counts
// subject must appear in each side table; extra side-table rows are dropped
// and reported.
Dataset ingest(const IngestPaths& paths, IngestReport* report = nullptr);

// ---------------------------------------------------------------------------
// Preprocessing (application protocol)

struct PreprocessOptions {
  double zero_prevalence_threshold = 0.9;  // drop taxa with more zeros than this
  double pseudovalue = 0.5;                // pseudo count for zero reads
  bool standardize_outcome = true;
};

struct PreprocessLog {
  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  double outcome_mean = 0.0;
  double outcome_sd = 1.0;
  bool standardized = false;
};

Dataset preprocess(const Dataset& data, const PreprocessOptions& options,
                   PreprocessLog* log = nullptr);

// ---------------------------------------------------------------------------
// Run manifest: key = value text; every run writes its resolved copy.

using Manifest = std::map<std::string, std::string>;

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

// ---------------------------------------------------------------------------
// Result writers

// Columnar trace: one named column per scalar parameter, one row per retained
// sample. psi columns are included only when the trace stores them.
void write_trace(const std::filesystem::path& path, const PosteriorTrace& trace,
                 const std::vector<std::string>& taxa);

// Acceptance-rate summary as a key-value block.
void write_acceptance(const std::filesystem::path& path, const AcceptanceStats& stats);

void write_effects(const std::filesystem::path& path,
                   const std::vector<EffectSummary>& effects,
                   const std::vector<std::string>& taxa);

void write_selection(const std::filesystem::path& path, const MediationResult& result,
                     const std::vector<std::string>& taxa);

void write_mppi(const std::filesystem::path& path, const PosteriorTrace& trace,
                const std::vector<std::string>& taxa);

// Dataset writers used by `simulate`; ingest() reproduces the data exactly.
void write_dataset(const std::filesystem::path& directory, const Dataset& data);
void write_truth(const std::filesystem::path& path, const SimulatedData& sim);

void write_study_report(const std::filesystem::path& path, const ScoreReport& report);
void write_study_estimates(const std::filesystem::path& path, const ScoreReport& report);
void write_sweep_report(const std::filesystem::path& path, const SweepReport& report);

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

}  // namespace cmbvs
