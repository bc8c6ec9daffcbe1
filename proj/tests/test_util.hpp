#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cmbvs/dataset.hpp"

namespace cmbvs::test {

// Small aligned dataset for kernel-level tests.
inline Dataset toy_dataset(const Eigen::MatrixXi& counts, const Eigen::VectorXd& outcome,
                           const Eigen::VectorXi& treatment,
                           const Eigen::MatrixXd& covariates = {},
                           const Eigen::MatrixXd& covariates_dm = {}) {
  Dataset data;
  data.counts = counts;
  data.outcome = outcome;
  data.treatment = treatment;
  data.covariates = covariates.size() ? covariates : Eigen::MatrixXd(counts.rows(), 0);
  data.covariates_dm =
      covariates_dm.size() ? covariates_dm : Eigen::MatrixXd(counts.rows(), 0);
  data.validate();
  return data;
}

inline Eigen::MatrixXi counts_matrix(std::initializer_list<std::initializer_list<int>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto J = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXi m(n, J);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Eigen::VectorXd dvec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline Eigen::VectorXi ivec(std::initializer_list<int> xs) {
  Eigen::VectorXi v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v[i++] = x;
  return v;
}

}  // namespace cmbvs::test
