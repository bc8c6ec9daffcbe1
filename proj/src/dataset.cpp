#include "cmbvs/dataset.hpp"

#include <sstream>

namespace cmbvs {

Eigen::VectorXd Dataset::row_totals() const {
  return counts.cast<double>().rowwise().sum();
}

void Dataset::validate() const {
  const int N = n();
  const int J = num_taxa();
  if (N < 1 || J < 2) throw DimensionError("Dataset: need n >= 1 subjects and J >= 2 taxa");
  if (outcome.size() != N) throw DimensionError("Dataset: outcome length != n");
  if (treatment.size() != N) throw DimensionError("Dataset: treatment length != n");
  if (covariates.size() > 0 && covariates.rows() != N)
    throw DimensionError("Dataset: covariate rows != n");
  if (covariates_dm.size() > 0 && covariates_dm.rows() != N)
    throw DimensionError("Dataset: DM covariate rows != n");
  if (!taxa.empty() && static_cast<int>(taxa.size()) != J)
    throw DimensionError("Dataset: taxa name count != J");
  if (!subjects.empty() && static_cast<int>(subjects.size()) != N)
    throw DimensionError("Dataset: subject id count != n");

  for (int i = 0; i < N; ++i) {
    if (treatment[i] != 0 && treatment[i] != 1) {
      std::ostringstream msg;
      msg << "Dataset: treatment for subject " << i << " is " << treatment[i]
          << ", expected 0 or 1";
      throw DataError(msg.str());
    }
    long total = 0;
    for (int j = 0; j < J; ++j) {
      if (counts(i, j) < 0) {
        std::ostringstream msg;
        msg << "Dataset: negative count at row " << i << ", column " << j;
        throw DataError(msg.str());
      }
      total += counts(i, j);
    }
    if (total <= 0) {
      std::ostringstream msg;
      msg << "Dataset: subject " << i << " has zero total reads";
      throw DataError(msg.str());
    }
  }
}

Dataset::Profiles Dataset::unique_dm_profiles() const {
  Profiles out;
  out.subject_profile.assign(static_cast<std::size_t>(n()), 0);
  if (num_covariates_dm() == 0) {
    out.profile_x.push_back(Eigen::VectorXd(0));
    return out;
  }
  for (int i = 0; i < n(); ++i) {
    const Eigen::VectorXd row = covariates_dm.row(i).transpose();
    int found = -1;
    for (std::size_t p = 0; p < out.profile_x.size(); ++p) {
      if ((out.profile_x[p] - row).cwiseAbs().maxCoeff() == 0.0) {
        found = static_cast<int>(p);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(out.profile_x.size());
      out.profile_x.push_back(row);
    }
    out.subject_profile[static_cast<std::size_t>(i)] = found;
  }
  return out;
}

}  // namespace cmbvs
