#pragma once

#include <Eigen/Core>
#include <vector>

#include "cmbvs/errors.hpp"

namespace cmbvs {

// A point on the simplex: strictly positive parts summing to one.
// Construct through close() or zero_replace(); the constructor enforces the
// invariants (tolerance 1e-12 on the sum).
class Composition {
 public:
  explicit Composition(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index j) const { return values_[j]; }

 private:
  Eigen::VectorXd values_;
};

// Sequential binary partition over J parts: row k contrasts the taxon at
// ordered position k (+1) against all later ones (-1). `taxon_order` maps
// ordered position -> original column index, so reordering for the J refits
// never permutes the underlying data.
class PartitionScheme {
 public:
  // Builds the scheme for the given permutation of 0..J-1 (ordered position
  // m holds original taxon taxon_order[m]). J >= 2.
  static PartitionScheme sequential(int J, std::vector<int> taxon_order);
  // Identity ordering.
  static PartitionScheme sequential(int J);

  int num_parts() const { return J_; }
  int num_balances() const { return J_ - 1; }
  const std::vector<int>& taxon_order() const { return order_; }

  // Sign row k in original column indices (+1/-1/0).
  Eigen::VectorXi eta_row(int k) const;
  // Full (J-1) x J sign matrix.
  Eigen::MatrixXi eta() const;

  // ILR coefficient matrix A ((J-1) x J, original column indices): row k is
  // sqrt((J-k)/(J-k+1)) * (+1 at ordered pos k, -1/(J-k) at later positions)
  // using 1-based k. Rows are orthonormal and zero-sum.
  Eigen::MatrixXd ilr_coefficients() const;

  // Balances from a vector of log abundances (or log proportions; rows of A
  // are zero-sum, so any common shift cancels). O(J) via suffix sums. This is
  // the sampler's hot path.
  Eigen::VectorXd balances_from_log(const Eigen::VectorXd& log_values) const;

 private:
  PartitionScheme(int J, std::vector<int> order) : J_(J), order_(std::move(order)) {}

  int J_;
  std::vector<int> order_;  // ordered position -> original index
};

// Closure to the simplex. Errors on an all-zero input.
Composition close(const Eigen::VectorXd& raw);

// Multiplicative zero replacement: zeros become delta, nonzero entries are
// scaled by (1 - c*delta) where c counts the zeros. `proportions` must be a
// nonnegative vector summing to one.
Composition zero_replace(const Eigen::VectorXd& proportions, double delta);

// Normalized log-ratio of geometric means of the two partitions encoded by
// `eta_row` (+1 / -1 entries; zeros excluded). Kept in the ratio form as the
// independent check on the coefficient formulation.
double balance(const Eigen::VectorXi& eta_row, const Composition& psi);

// All J-1 balances of the scheme, row-wise.
Eigen::VectorXd balances_all(const PartitionScheme& scheme, const Composition& psi);

}  // namespace cmbvs
