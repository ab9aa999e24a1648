#include "sparsereg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sparsereg {

DesignMatrix::DesignMatrix(Eigen::MatrixXd entries, bool normalized)
    : entries_(std::move(entries)), normalized_(normalized) {
  if (entries_.cols() > 0 && entries_.rows() == 0) {
    throw InvalidMatrixError("matrix with columns must have at least one row");
  }
  if (!entries_.allFinite()) {
    throw InvalidMatrixError("matrix contains non-finite entries");
  }
  if (normalized_) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (std::abs(entries_.col(j).norm() - 1.0) > kNormTolerance) {
        throw NotNormalizedError("column " + std::to_string(j) +
                                 " is not unit-norm");
      }
    }
  }
}

IndexSet::IndexSet(std::vector<int> indices) : idx_(std::move(indices)) {
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] < 0) {
      throw OutOfRangeError("index set entries must be nonnegative");
    }
    if (k > 0 && idx_[k] <= idx_[k - 1]) {
      throw OutOfRangeError("index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::sorted(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  return IndexSet(std::move(indices));
}

SpectralInterval::SpectralInterval(double lo, double hi)
    : sigma_min(lo), sigma_max(hi) {
  if (!(lo >= 0.0) || !(hi >= lo)) {
    throw OutOfRangeError("spectral interval requires 0 <= lo <= hi");
  }
}

DesignMatrix normalize_columns(const DesignMatrix& m) {
  Eigen::MatrixXd out = m.data();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double norm = out.col(j).norm();
    if (norm == 0.0) {
      throw ZeroColumnError(static_cast<int>(j));
    }
    out.col(j) /= norm;
  }
  return DesignMatrix(std::move(out), true);
}

double coherence(const DesignMatrix& x) {
  if (!x.is_normalized()) {
    throw NotNormalizedError();
  }
  if (x.cols() < 2) {
    throw TooFewColumnsError();
  }
  const Eigen::MatrixXd gram = x.data().transpose() * x.data();
  double best = 0.0;
  for (Eigen::Index j = 0; j < gram.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < gram.rows(); ++i) {
      best = std::max(best, std::abs(gram(i, j)));
    }
  }
  return std::min(best, 1.0);
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const IndexSet& t) {
  Eigen::MatrixXd out(m.rows(), t.size());
  for (int k = 0; k < t.size(); ++k) {
    if (t[k] >= m.cols()) {
      throw OutOfRangeError("index " + std::to_string(t[k]) +
                            " out of range for " + std::to_string(m.cols()) +
                            " columns");
    }
    out.col(k) = m.col(t[k]);
  }
  return out;
}

SpectralInterval submatrix_extremes(const DesignMatrix& x, const IndexSet& t) {
  if (t.empty()) {
    throw EmptyIndexSetError();
  }
  const Eigen::MatrixXd sub = select_columns(x.data(), t);
  const Eigen::MatrixXd gram = sub.transpose() * sub;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const auto& ev = eig.eigenvalues();
  const double lo = std::sqrt(std::max(0.0, ev(0)));
  const double hi = std::sqrt(std::max(0.0, ev(ev.size() - 1)));
  return SpectralInterval(lo, std::max(lo, hi));
}

SpectralInterval coherence_sigma_bounds(double mu, int t) {
  const double spread = mu * std::sqrt(static_cast<double>(t));
  return SpectralInterval(std::max(0.0, 1.0 - spread), 1.0 + spread);
}

DesignMatrix concat(const DesignMatrix& x, const DesignMatrix& x0) {
  if (x.cols() == 0) {
    return x0;
  }
  if (x0.cols() == 0) {
    return x;
  }
  if (x.rows() != x0.rows()) {
    throw RowMismatchError();
  }
  if (!x.is_normalized() || !x0.is_normalized()) {
    throw NotNormalizedError();
  }
  Eigen::MatrixXd out(x.rows(), x.cols() + x0.cols());
  out.leftCols(x.cols()) = x.data();
  out.rightCols(x0.cols()) = x0.data();
  return DesignMatrix(std::move(out), true);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::MatrixXd gram;
  if (a.cols() <= a.rows()) {
    gram = a.transpose() * a;
  } else {
    gram = a * a.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double gram_identity_deviation(const Eigen::MatrixXd& cols) {
  const Eigen::MatrixXd gram = cols.transpose() * cols;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const auto& ev = eig.eigenvalues();
  double dev = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    dev = std::max(dev, std::abs(ev(i) - 1.0));
  }
  return dev;
}

}  // namespace sparsereg
