#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sparsereg/errors.hpp"

namespace sparsereg {

// Dense design matrix with a column-normalization flag. Immutable after
// construction; safe to share across concurrent readers.
class DesignMatrix {
 public:
  // Column norms may drift from 1 by at most this much when the
  // normalized flag is set.
  static constexpr double kNormTolerance = 1e-12;

  DesignMatrix() = default;
  explicit DesignMatrix(Eigen::MatrixXd entries, bool normalized = false);

  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  const Eigen::MatrixXd& data() const { return entries_; }
  auto column(Eigen::Index j) const { return entries_.col(j); }
  bool is_normalized() const { return normalized_; }

 private:
  Eigen::MatrixXd entries_;
  bool normalized_ = false;
};

// Strictly increasing set of column indices.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> indices);

  // Sorts and validates; rejects duplicates.
  static IndexSet sorted(std::vector<int> indices);

  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  const std::vector<int>& indices() const { return idx_; }
  int operator[](int k) const { return idx_[static_cast<std::size_t>(k)]; }
  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }
  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<int> idx_;
};

// [sigma_min, sigma_max] bracket for extreme singular values.
struct SpectralInterval {
  double sigma_min = 0.0;
  double sigma_max = 0.0;

  SpectralInterval() = default;
  SpectralInterval(double lo, double hi);
};

// Rescales every column to unit Euclidean norm, preserving direction.
// Throws ZeroColumnError for an exactly zero column.
DesignMatrix normalize_columns(const DesignMatrix& m);

// mu(X) = max_{j != j'} |<X_j, X_j'>| for a normalized matrix with p >= 2.
double coherence(const DesignMatrix& x);

// Exact extreme singular values of the column submatrix X_T, computed from
// the eigenvalues of the |T| x |T| Gram matrix.
SpectralInterval submatrix_extremes(const DesignMatrix& x, const IndexSet& t);

// Coherence sandwich: sigma_min(X_T) >= 1 - mu sqrt(t) (clamped at 0) and
// sigma_max(X_T) <= 1 + mu sqrt(t) for every |T| = t.
SpectralInterval coherence_sigma_bounds(double mu, int t);

// Column-wise concatenation [X, X0]; X's columns come first. Both inputs
// must be normalized and share the row count (empty inputs pass through).
DesignMatrix concat(const DesignMatrix& x, const DesignMatrix& x0);

// Columns of m selected by t, in t's (increasing) order.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const IndexSet& t);

// Spectral norm via the Gram matrix of the smaller side.
double spectral_norm(const Eigen::MatrixXd& a);

// ||A^t A - I|| in spectral norm, for column blocks.
double gram_identity_deviation(const Eigen::MatrixXd& cols);

}  // namespace sparsereg
