#include "cmbvs/composition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cmbvs {

namespace {

constexpr double kSumTolerance = 1e-12;

}  // namespace

Composition::Composition(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() < 1) throw DimensionError("Composition: empty vector");
  for (Eigen::Index j = 0; j < values_.size(); ++j) {
    if (!(values_[j] > 0.0)) {
      std::ostringstream msg;
      msg << "Composition: entry " << j << " is not strictly positive (" << values_[j] << ")";
      throw DomainError(msg.str());
    }
  }
  const double sum = values_.sum();
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << "Composition: entries sum to " << sum << ", expected 1";
    throw DomainError(msg.str());
  }
}

Composition close(const Eigen::VectorXd& raw) {
  if (raw.size() < 1) throw DimensionError("close: empty vector");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    if (raw[j] < 0.0) throw DomainError("close: negative entry");
    sum += raw[j];
  }
  if (sum <= 0.0) throw DomainError("close: all entries zero");
  Eigen::VectorXd v = raw / sum;
  // Guard the sum invariant against accumulated rounding.
  v /= v.sum();
  return Composition(std::move(v));
}

Composition zero_replace(const Eigen::VectorXd& proportions, double delta) {
  if (!(delta > 0.0)) throw ConfigError("zero_replace: delta must be positive");
  const Eigen::Index J = proportions.size();
  Eigen::Index zeros = 0;
  for (Eigen::Index j = 0; j < J; ++j) {
    if (proportions[j] < 0.0) throw DomainError("zero_replace: negative entry");
    if (proportions[j] == 0.0) ++zeros;
  }
  if (zeros == 0) return close(proportions);
  const double shrink = 1.0 - static_cast<double>(zeros) * delta;
  if (shrink <= 0.0) {
    throw ConfigError("zero_replace: delta too large for the number of zeros");
  }
  Eigen::VectorXd v(J);
  for (Eigen::Index j = 0; j < J; ++j) {
    v[j] = proportions[j] == 0.0 ? delta : proportions[j] * shrink;
  }
  v /= v.sum();
  return Composition(std::move(v));
}

PartitionScheme PartitionScheme::sequential(int J, std::vector<int> taxon_order) {
  if (J < 2) throw DimensionError("PartitionScheme: need at least two parts");
  if (static_cast<int>(taxon_order.size()) != J) {
    throw DimensionError("PartitionScheme: taxon_order length must equal J");
  }
  std::vector<bool> seen(J, false);
  for (int idx : taxon_order) {
    if (idx < 0 || idx >= J || seen[idx]) {
      throw ConfigError("PartitionScheme: taxon_order is not a permutation of 0..J-1");
    }
    seen[idx] = true;
  }
  return PartitionScheme(J, std::move(taxon_order));
}

PartitionScheme PartitionScheme::sequential(int J) {
  std::vector<int> order(static_cast<std::size_t>(std::max(J, 0)));
  std::iota(order.begin(), order.end(), 0);
  return sequential(J, std::move(order));
}

Eigen::VectorXi PartitionScheme::eta_row(int k) const {
  if (k < 0 || k >= num_balances()) throw DimensionError("eta_row: index out of range");
  Eigen::VectorXi row = Eigen::VectorXi::Zero(J_);
  row[order_[k]] = 1;
  for (int m = k + 1; m < J_; ++m) row[order_[m]] = -1;
  return row;
}

Eigen::MatrixXi PartitionScheme::eta() const {
  Eigen::MatrixXi m(num_balances(), J_);
  for (int k = 0; k < num_balances(); ++k) m.row(k) = eta_row(k).transpose();
  return m;
}

Eigen::MatrixXd PartitionScheme::ilr_coefficients() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_balances(), J_);
  for (int k = 0; k < num_balances(); ++k) {
    const double minus = static_cast<double>(J_ - k - 1);  // size of the -1 block
    const double scale = std::sqrt(minus / (minus + 1.0));
    a(k, order_[k]) = scale;
    for (int m = k + 1; m < J_; ++m) a(k, order_[m]) = -scale / minus;
  }
  return a;
}

Eigen::VectorXd PartitionScheme::balances_from_log(const Eigen::VectorXd& log_values) const {
  if (log_values.size() != J_) throw DimensionError("balances_from_log: length mismatch");
  Eigen::VectorXd out(num_balances());
  // suffix[m] = sum of ordered log values strictly after position m
  double suffix = 0.0;
  std::vector<double> tail(static_cast<std::size_t>(J_));
  for (int m = J_ - 1; m >= 0; --m) {
    tail[static_cast<std::size_t>(m)] = suffix;
    suffix += log_values[order_[m]];
  }
  for (int k = 0; k < num_balances(); ++k) {
    const double minus = static_cast<double>(J_ - k - 1);
    const double scale = std::sqrt(minus / (minus + 1.0));
    out[k] = scale * (log_values[order_[k]] - tail[static_cast<std::size_t>(k)] / minus);
  }
  return out;
}

double balance(const Eigen::VectorXi& eta_row, const Composition& psi) {
  if (eta_row.size() != psi.size()) throw DimensionError("balance: length mismatch");
  double log_plus = 0.0, log_minus = 0.0;
  int n_plus = 0, n_minus = 0;
  for (Eigen::Index j = 0; j < eta_row.size(); ++j) {
    if (eta_row[j] == 0) continue;
    if (!(psi[j] > 0.0)) throw DomainError("balance: zero entry in an active partition");
    if (eta_row[j] > 0) {
      log_plus += std::log(psi[j]);
      ++n_plus;
    } else {
      log_minus += std::log(psi[j]);
      ++n_minus;
    }
  }
  if (n_plus == 0 || n_minus == 0) throw ConfigError("balance: both partitions must be nonempty");
  const double np = static_cast<double>(n_plus);
  const double nm = static_cast<double>(n_minus);
  const double scale = std::sqrt(np * nm / (np + nm));
  // log of the ratio of geometric means
  return scale * (log_plus / np - log_minus / nm);
}

Eigen::VectorXd balances_all(const PartitionScheme& scheme, const Composition& psi) {
  if (psi.size() != scheme.num_parts()) throw DimensionError("balances_all: length mismatch");
  return scheme.balances_from_log(psi.values().array().log().matrix());
}

}  // namespace cmbvs
