#include "cmbvs/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace cmbvs {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& field, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError("could not parse number '" + field + "' in " + context);
  }
}

long parse_count(const std::string& field, const std::string& context) {
  try {
    std::size_t used = 0;
    const long v = std::stol(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError("count '" + field + "' in " + context + " is not an integer");
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

// Side tables keyed by subject id: id column first, values after.
struct KeyedTable {
  std::vector<std::string> value_names;
  std::unordered_map<std::string, std::vector<std::string>> by_id;
  std::vector<std::string> id_order;
};

KeyedTable read_keyed(const std::filesystem::path& path) {
  const Table table = read_table(path);
  if (table.header.size() < 2)
    throw DataError(path.string() + ": expected a subject-id column and at least one value");
  KeyedTable keyed;
  keyed.value_names.assign(table.header.begin() + 1, table.header.end());
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw DataError(path.string() + ": row width does not match the header");
    const std::string id = trim(row[0]);
    if (keyed.by_id.count(id))
      throw DataError(path.string() + ": duplicate subject id '" + id + "'");
    keyed.by_id.emplace(id, std::vector<std::string>(row.begin() + 1, row.end()));
    keyed.id_order.push_back(id);
  }
  return keyed;
}

}  // namespace

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;  // schema / comment lines
    auto fields = split_csv(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw DataError(path.string() + ": no header row");
  return table;
}

void write_table(const std::filesystem::path& path, const Table& table) {
  auto out = open_for_write(path);
  out << kTableSchema << "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Dataset ingest(const IngestPaths& paths, IngestReport* report) {
  const Table counts_table = read_table(paths.counts);
  if (counts_table.header.size() < 3)
    throw DataError("counts file needs a subject-id column and at least two taxa");
  if (counts_table.rows.empty()) throw DataError("counts file has no data rows");

  const int n = static_cast<int>(counts_table.rows.size());
  const int J = static_cast<int>(counts_table.header.size()) - 1;

  Dataset data;
  data.taxa.assign(counts_table.header.begin() + 1, counts_table.header.end());
  data.counts.resize(n, J);
  data.subjects.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = counts_table.rows[static_cast<std::size_t>(i)];
    if (row.size() != counts_table.header.size())
      throw DataError("counts row " + std::to_string(i + 1) + " width mismatch");
    const std::string id = trim(row[0]);
    if (std::find(data.subjects.begin(), data.subjects.end(), id) != data.subjects.end())
      throw DataError("counts file: duplicate subject id '" + id + "'");
    data.subjects.push_back(id);
    for (int j = 0; j < J; ++j) {
      std::ostringstream context;
      context << "counts row " << (i + 1) << ", column '" << data.taxa[static_cast<std::size_t>(j)]
              << "'";
      const long v = parse_count(row[static_cast<std::size_t>(j + 1)], context.str());
      if (v < 0) throw DataError("negative count at " + context.str());
      data.counts(i, j) = static_cast<int>(v);
    }
  }

  auto align = [&](const KeyedTable& keyed, const char* what,
                   auto&& store) {  // store(i, values)
    for (int i = 0; i < n; ++i) {
      const auto& id = data.subjects[static_cast<std::size_t>(i)];
      const auto it = keyed.by_id.find(id);
      if (it == keyed.by_id.end())
        throw DataError(std::string(what) + " file is missing subject '" + id + "'");
      store(i, it->second);
    }
    if (report) {
      for (const auto& id : keyed.id_order) {
        if (std::find(data.subjects.begin(), data.subjects.end(), id) == data.subjects.end())
          report->unmatched.push_back(std::string(what) + ":" + id);
      }
    }
  };

  const KeyedTable outcome = read_keyed(paths.outcome);
  data.outcome.resize(n);
  align(outcome, "outcome", [&](int i, const std::vector<std::string>& values) {
    data.outcome[i] = parse_double(values[0], "outcome for subject " +
                                                  data.subjects[static_cast<std::size_t>(i)]);
  });

  const KeyedTable treatment = read_keyed(paths.treatment);
  data.treatment.resize(n);
  align(treatment, "treatment", [&](int i, const std::vector<std::string>& values) {
    const long t = parse_count(values[0], "treatment for subject " +
                                              data.subjects[static_cast<std::size_t>(i)]);
    if (t != 0 && t != 1)
      throw DataError("treatment for subject " + data.subjects[static_cast<std::size_t>(i)] +
                      " must be 0 or 1");
    data.treatment[i] = static_cast<int>(t);
  });

  if (paths.covariates) {
    const KeyedTable cov = read_keyed(*paths.covariates);
    data.covariates.resize(n, static_cast<int>(cov.value_names.size()));
    align(cov, "covariates", [&](int i, const std::vector<std::string>& values) {
      for (std::size_t p = 0; p < values.size(); ++p)
        data.covariates(i, static_cast<int>(p)) =
            parse_double(values[p], "covariates for subject " +
                                        data.subjects[static_cast<std::size_t>(i)]);
    });
  } else {
    data.covariates.resize(n, 0);
  }

  if (paths.covariates_dm) {
    const KeyedTable cov = read_keyed(*paths.covariates_dm);
    data.covariates_dm.resize(n, static_cast<int>(cov.value_names.size()));
    align(cov, "dm-covariates", [&](int i, const std::vector<std::string>& values) {
      for (std::size_t p = 0; p < values.size(); ++p)
        data.covariates_dm(i, static_cast<int>(p)) =
            parse_double(values[p], "dm-covariates for subject " +
                                        data.subjects[static_cast<std::size_t>(i)]);
    });
  } else {
    data.covariates_dm.resize(n, 0);
  }

  // A constant outcome cannot be modeled (nor standardized).
  const double first = data.outcome[0];
  bool constant = true;
  for (int i = 1; i < n; ++i) constant = constant && data.outcome[i] == first;
  if (constant && n > 1) throw DataError("outcome is constant across subjects");

  data.validate();
  return data;
}

Dataset preprocess(const Dataset& data, const PreprocessOptions& options,
                   PreprocessLog* log) {
  if (!(options.zero_prevalence_threshold > 0.0) || options.zero_prevalence_threshold > 1.0)
    throw ConfigError("preprocess: zero-prevalence threshold must lie in (0,1]");
  if (!(options.pseudovalue > 0.0)) throw ConfigError("preprocess: pseudovalue must be positive");

  const int n = data.n();
  const int J = data.num_taxa();
  std::vector<int> keep;
  for (int j = 0; j < J; ++j) {
    int zeros = 0;
    for (int i = 0; i < n; ++i)
      if (data.counts(i, j) == 0) ++zeros;
    const double prevalence = static_cast<double>(zeros) / n;
    const std::string name =
        data.taxa.empty() ? "taxon_" + std::to_string(j + 1) : data.taxa[static_cast<std::size_t>(j)];
    if (prevalence > options.zero_prevalence_threshold) {
      if (log) log->dropped.push_back(name);
    } else {
      keep.push_back(j);
      if (log) log->kept.push_back(name);
    }
  }
  if (keep.size() < 2)
    throw ConfigError("preprocess: fewer than two taxa survive the zero-prevalence filter");

  Dataset out = data;
  out.counts.resize(n, static_cast<int>(keep.size()));
  out.taxa.clear();
  for (std::size_t m = 0; m < keep.size(); ++m) {
    out.counts.col(static_cast<int>(m)) = data.counts.col(keep[m]);
    if (!data.taxa.empty()) out.taxa.push_back(data.taxa[static_cast<std::size_t>(keep[m])]);
  }

  if (options.standardize_outcome) {
    const double mean = out.outcome.mean();
    double ss = 0.0;
    for (int i = 0; i < n; ++i) ss += (out.outcome[i] - mean) * (out.outcome[i] - mean);
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    if (!(sd > 0.0)) throw DataError("preprocess: outcome has zero variance");
    out.outcome = (out.outcome.array() - mean) / sd;
    if (log) {
      log->outcome_mean = mean;
      log->outcome_sd = sd;
      log->standardized = true;
    }
  }

  out.validate();
  return out;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  Manifest manifest;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw DataError(path.string() + ": expected 'key = value', got '" + trimmed + "'");
    manifest[trim(trimmed.substr(0, eq))] = trim(trimmed.substr(eq + 1));
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  auto out = open_for_write(path);
  for (const auto& [key, value] : manifest) out << key << " = " << value << "\n";
}

void write_trace(const std::filesystem::path& path, const PosteriorTrace& trace,
                 const std::vector<std::string>& taxa) {
  auto taxon_name = [&](int j) {
    return taxa.empty() ? "t" + std::to_string(j + 1) : taxa[static_cast<std::size_t>(j)];
  };
  Table table;
  table.header = {"sample", "c0", "c1", "sigma2"};
  for (int j = 0; j < trace.J - 1; ++j) table.header.push_back("beta." + std::to_string(j + 1));
  for (int j = 0; j < trace.J - 1; ++j) table.header.push_back("xi." + std::to_string(j + 1));
  for (int p = 0; p < trace.P; ++p) table.header.push_back("kappa." + std::to_string(p + 1));
  for (int p = 0; p < trace.P; ++p) table.header.push_back("nu." + std::to_string(p + 1));
  for (int j = 0; j < trace.J; ++j) table.header.push_back("alpha." + taxon_name(j));
  for (int j = 0; j < trace.J; ++j) table.header.push_back("phi." + taxon_name(j));
  for (int j = 0; j < trace.J; ++j) table.header.push_back("varphi." + taxon_name(j));
  for (int j = 0; j < trace.J; ++j)
    for (int p = 0; p < trace.P_dm; ++p)
      table.header.push_back("theta." + taxon_name(j) + "." + std::to_string(p + 1));
  for (int j = 0; j < trace.J; ++j)
    for (int p = 0; p < trace.P_dm; ++p)
      table.header.push_back("zeta." + taxon_name(j) + "." + std::to_string(p + 1));
  const bool with_psi = !trace.psi.empty();
  if (with_psi) {
    for (int i = 0; i < trace.n; ++i)
      for (int j = 0; j < trace.J; ++j)
        table.header.push_back("psi." + std::to_string(i + 1) + "." + taxon_name(j));
  }

  for (std::size_t s = 0; s < trace.size(); ++s) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    const auto& o = trace.outcome[s];
    const auto& d = trace.dm[s];
    row.push_back(std::to_string(s + 1));
    row.push_back(format_double(o.c0));
    row.push_back(format_double(o.c1));
    row.push_back(format_double(o.sigma2));
    for (int j = 0; j < trace.J - 1; ++j) row.push_back(format_double(o.beta[j]));
    for (int j = 0; j < trace.J - 1; ++j) row.push_back(std::to_string(o.xi[j]));
    for (int p = 0; p < trace.P; ++p) row.push_back(format_double(o.kappa[p]));
    for (int p = 0; p < trace.P; ++p) row.push_back(std::to_string(o.nu[p]));
    for (int j = 0; j < trace.J; ++j) row.push_back(format_double(d.alpha[j]));
    for (int j = 0; j < trace.J; ++j) row.push_back(format_double(d.phi[j]));
    for (int j = 0; j < trace.J; ++j) row.push_back(std::to_string(d.varphi[j]));
    for (int j = 0; j < trace.J; ++j)
      for (int p = 0; p < trace.P_dm; ++p) row.push_back(format_double(d.theta(j, p)));
    for (int j = 0; j < trace.J; ++j)
      for (int p = 0; p < trace.P_dm; ++p) row.push_back(std::to_string(d.zeta(j, p)));
    if (with_psi) {
      const auto& psi = trace.psi[s];
      for (int i = 0; i < trace.n; ++i)
        for (int j = 0; j < trace.J; ++j) row.push_back(format_double(psi(i, j)));
    }
    table.rows.push_back(std::move(row));
  }
  write_table(path, table);
}

void write_acceptance(const std::filesystem::path& path, const AcceptanceStats& stats) {
  auto out = open_for_write(path);
  auto line = [&](const char* name, const AcceptanceCounter& c) {
    out << name << ".proposed = " << c.proposed << "\n";
    out << name << ".accepted = " << c.accepted << "\n";
    out << name << ".rate = " << format_double(c.rate()) << "\n";
  };
  line("alpha", stats.alpha);
  line("k_rows", stats.k_rows);
  line("phi_add_delete", stats.phi_add_delete);
  line("theta_add_delete", stats.theta_add_delete);
  line("dm_within", stats.dm_within);
  line("xi_add_delete", stats.xi_add_delete);
  line("nu_add_delete", stats.nu_add_delete);
  line("outcome_within", stats.outcome_within);
}

namespace {

std::string taxon_label(int taxon, const std::vector<std::string>& taxa) {
  if (taxon < 0) return "";
  if (taxa.empty()) return "taxon_" + std::to_string(taxon + 1);
  return taxa[static_cast<std::size_t>(taxon)];
}

std::string mppi_field(double value) {
  return std::isnan(value) ? "" : format_double(value);
}

}  // namespace

void write_effects(const std::filesystem::path& path,
                   const std::vector<EffectSummary>& effects,
                   const std::vector<std::string>& taxa) {
  Table table;
  table.header = {"estimand", "taxon",    "profile", "mean",    "lower",
                  "upper",    "selected", "mppi_phi", "mppi_xi"};
  for (const auto& e : effects) {
    table.rows.push_back({e.name, taxon_label(e.taxon, taxa),
                          e.profile < 0 ? "" : std::to_string(e.profile),
                          format_double(e.mean), format_double(e.lower),
                          format_double(e.upper), e.selected ? "1" : "0",
                          mppi_field(e.mppi_phi), mppi_field(e.mppi_xi)});
  }
  write_table(path, table);
}

void write_selection(const std::filesystem::path& path, const MediationResult& result,
                     const std::vector<std::string>& taxa) {
  Table table;
  table.header = {"taxon", "selected", "mppi_phi", "refit"};
  for (std::size_t j = 0; j < result.selected.size(); ++j) {
    table.rows.push_back(
        {taxon_label(static_cast<int>(j), taxa), result.selected[j] ? "1" : "0",
         format_double(result.mppi_phi.size() > static_cast<Eigen::Index>(j)
                           ? result.mppi_phi[static_cast<Eigen::Index>(j)]
                           : 0.0),
         result.refit_performed.empty() ? "" : (result.refit_performed[j] ? "1" : "0")});
  }
  write_table(path, table);
}

void write_mppi(const std::filesystem::path& path, const PosteriorTrace& trace,
                const std::vector<std::string>& taxa) {
  const Eigen::VectorXd xi = mppi(trace, IndicatorFamily::kXi);
  const Eigen::VectorXd varphi = mppi(trace, IndicatorFamily::kVarphi);
  Table table;
  table.header = {"family", "index", "name", "mppi"};
  for (int j = 0; j < varphi.size(); ++j)
    table.rows.push_back(
        {"varphi", std::to_string(j + 1), taxon_label(j, taxa), format_double(varphi[j])});
  for (int j = 0; j < xi.size(); ++j)
    table.rows.push_back(
        {"xi", std::to_string(j + 1), "balance_" + std::to_string(j + 1), format_double(xi[j])});
  if (trace.P > 0) {
    const Eigen::VectorXd nu = mppi(trace, IndicatorFamily::kNu);
    for (int p = 0; p < nu.size(); ++p)
      table.rows.push_back(
          {"nu", std::to_string(p + 1), "covariate_" + std::to_string(p + 1), format_double(nu[p])});
  }
  if (trace.P_dm > 0) {
    const Eigen::VectorXd zeta = mppi(trace, IndicatorFamily::kZeta);
    for (int j = 0; j < trace.J; ++j)
      for (int p = 0; p < trace.P_dm; ++p)
        table.rows.push_back({"zeta", std::to_string(j * trace.P_dm + p + 1),
                              taxon_label(j, taxa) + "." + std::to_string(p + 1),
                              format_double(zeta[j * trace.P_dm + p])});
  }
  write_table(path, table);
}

void write_dataset(const std::filesystem::path& directory, const Dataset& data) {
  std::filesystem::create_directories(directory);
  auto subject = [&](int i) {
    return data.subjects.empty() ? "s" + std::to_string(i + 1)
                                 : data.subjects[static_cast<std::size_t>(i)];
  };

  Table counts;
  counts.header.push_back("subject_id");
  for (int j = 0; j < data.num_taxa(); ++j)
    counts.header.push_back(taxon_label(j, data.taxa));
  for (int i = 0; i < data.n(); ++i) {
    std::vector<std::string> row{subject(i)};
    for (int j = 0; j < data.num_taxa(); ++j) row.push_back(std::to_string(data.counts(i, j)));
    counts.rows.push_back(std::move(row));
  }
  write_table(directory / "counts.csv", counts);

  Table outcome;
  outcome.header = {"subject_id", "outcome"};
  for (int i = 0; i < data.n(); ++i)
    outcome.rows.push_back({subject(i), format_double(data.outcome[i])});
  write_table(directory / "outcome.csv", outcome);

  Table treatment;
  treatment.header = {"subject_id", "treatment"};
  for (int i = 0; i < data.n(); ++i)
    treatment.rows.push_back({subject(i), std::to_string(data.treatment[i])});
  write_table(directory / "treatment.csv", treatment);

  if (data.num_covariates() > 0) {
    Table cov;
    cov.header.push_back("subject_id");
    for (int p = 0; p < data.num_covariates(); ++p)
      cov.header.push_back("x" + std::to_string(p + 1));
    for (int i = 0; i < data.n(); ++i) {
      std::vector<std::string> row{subject(i)};
      for (int p = 0; p < data.num_covariates(); ++p)
        row.push_back(format_double(data.covariates(i, p)));
      cov.rows.push_back(std::move(row));
    }
    write_table(directory / "covariates.csv", cov);
  }
  if (data.num_covariates_dm() > 0) {
    Table cov;
    cov.header.push_back("subject_id");
    for (int p = 0; p < data.num_covariates_dm(); ++p)
      cov.header.push_back("xdm" + std::to_string(p + 1));
    for (int i = 0; i < data.n(); ++i) {
      std::vector<std::string> row{subject(i)};
      for (int p = 0; p < data.num_covariates_dm(); ++p)
        row.push_back(format_double(data.covariates_dm(i, p)));
      cov.rows.push_back(std::move(row));
    }
    write_table(directory / "covariates_dm.csv", cov);
  }
}

void write_truth(const std::filesystem::path& path, const SimulatedData& sim) {
  Table table;
  table.header = {"taxon", "active", "phi_true", "beta_log_true", "alpha_true"};
  for (int j = 0; j < sim.data.num_taxa(); ++j) {
    table.rows.push_back({taxon_label(j, sim.data.taxa),
                          sim.truth[static_cast<std::size_t>(j)] ? "1" : "0",
                          format_double(sim.phi_true[j]), format_double(sim.beta_log_true[j]),
                          format_double(sim.alpha_true[j])});
  }
  table.rows.push_back({"__direct__", "", format_double(sim.true_direct), "", ""});
  table.rows.push_back({"__overall__", "", format_double(sim.true_overall), "", ""});
  write_table(path, table);
}

void write_study_report(const std::filesystem::path& path, const ScoreReport& report) {
  Table table;
  table.header = {"method", "replicate", "sens", "spec", "mcc", "tp", "fp", "tn", "fn"};
  for (const auto& row : report.methods) {
    table.rows.push_back({strategy_name(row.strategy), "mean", format_double(row.sens),
                          format_double(row.spec), format_double(row.mcc), "", "", "", ""});
    for (std::size_t r = 0; r < row.per_replicate.size(); ++r) {
      const auto& s = row.per_replicate[r];
      table.rows.push_back({strategy_name(row.strategy), std::to_string(r + 1),
                            format_double(s.sens), format_double(s.spec), format_double(s.mcc),
                            std::to_string(s.tp), std::to_string(s.fp), std::to_string(s.tn),
                            std::to_string(s.fn)});
    }
  }
  write_table(path, table);
}

void write_study_estimates(const std::filesystem::path& path, const ScoreReport& report) {
  Table table;
  table.header = {"estimand", "replicate", "mean", "lower", "upper", "truth"};
  table.rows.push_back({"direct", "bias/mse/cov", format_double(report.direct.bias),
                        format_double(report.direct.mse), format_double(report.direct.coverage),
                        ""});
  table.rows.push_back({"overall_indirect", "bias/mse/cov", format_double(report.overall.bias),
                        format_double(report.overall.mse),
                        format_double(report.overall.coverage), ""});
  for (std::size_t r = 0; r < report.estimates.size(); ++r) {
    const auto& e = report.estimates[r];
    table.rows.push_back({"direct", std::to_string(r + 1), format_double(e.direct_mean),
                          format_double(e.direct_lower), format_double(e.direct_upper),
                          format_double(e.true_direct)});
    table.rows.push_back({"overall_indirect", std::to_string(r + 1),
                          format_double(e.overall_mean), format_double(e.overall_lower),
                          format_double(e.overall_upper), format_double(e.true_overall)});
  }
  write_table(path, table);
}

void write_sweep_report(const std::filesystem::path& path, const SweepReport& report) {
  Table table;
  table.header = {"cell", "method", "sens", "spec", "mcc"};
  for (const auto& cell : report.cells) {
    for (const auto& row : cell.methods) {
      table.rows.push_back({cell.label, strategy_name(row.strategy), format_double(row.sens),
                            format_double(row.spec), format_double(row.mcc)});
    }
  }
  write_table(path, table);
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kCmbvs1:
      return "cmbvs1";
    case Strategy::kCmbvs2:
      return "cmbvs2";
    case Strategy::kCmbvs3:
      return "cmbvs3";
  }
  throw UsageError("strategy_name: unknown strategy");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "cmbvs1") return Strategy::kCmbvs1;
  if (name == "cmbvs2") return Strategy::kCmbvs2;
  if (name == "cmbvs3") return Strategy::kCmbvs3;
  throw UsageError("unknown strategy '" + name + "' (expected cmbvs1|cmbvs2|cmbvs3)");
}

}  // namespace cmbvs
