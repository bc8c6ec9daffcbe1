#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cmbvs/errors.hpp"

namespace cmbvs {

// Aligned study data: taxa counts, outcome, treatment, and the covariate
// matrices of the two model levels (they need not coincide).
struct Dataset {
  Eigen::MatrixXi counts;          // n x J, nonnegative, positive row sums
  Eigen::VectorXd outcome;         // length n
  Eigen::VectorXi treatment;       // length n, entries in {0,1}
  Eigen::MatrixXd covariates;      // n x P, outcome-level (P may be 0)
  Eigen::MatrixXd covariates_dm;   // n x P_dm, DM-level (P_dm may be 0)
  std::vector<std::string> taxa;   // length J (may be empty for synthetic data)
  std::vector<std::string> subjects;  // length n (may be empty)

  int n() const { return static_cast<int>(counts.rows()); }
  int num_taxa() const { return static_cast<int>(counts.cols()); }
  int num_covariates() const { return static_cast<int>(covariates.cols()); }
  int num_covariates_dm() const { return static_cast<int>(covariates_dm.cols()); }

  // Row sums of the count matrix (library sizes).
  Eigen::VectorXd row_totals() const;

  // Throws DataError / DimensionError on any violated invariant.
  void validate() const;

  // Group subjects by identical DM covariate rows; returns for each subject
  // the id of its profile and one representative covariate row per profile.
  // With P_dm = 0 there is a single population-level profile.
  struct Profiles {
    std::vector<int> subject_profile;        // length n
    std::vector<Eigen::VectorXd> profile_x;  // one row per unique profile
  };
  Profiles unique_dm_profiles() const;
};

}  // namespace cmbvs
