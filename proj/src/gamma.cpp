#include "sparsereg/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sparsereg/errors.hpp"
#include "sparsereg/sphere.hpp"

namespace sparsereg {

namespace {

// C(p, s), saturating at cap + 1.
long long binomial_capped(int p, int s, long long cap) {
  if (s < 0 || s > p) return 0;
  s = std::min(s, p - s);
  long long result = 1;
  for (int k = 1; k <= s; ++k) {
    result = result * (p - s + k) / k;
    if (result > cap) return cap + 1;
  }
  return result;
}

template <typename F>
void for_each_combination(int p, int s, F&& body) {
  std::vector<int> c(s);
  for (int k = 0; k < s; ++k) c[k] = k;
  while (true) {
    body(c);
    int k = s - 1;
    while (k >= 0 && c[k] == p - s + k) --k;
    if (k < 0) break;
    ++c[k];
    for (int j = k + 1; j < s; ++j) c[j] = c[j - 1] + 1;
  }
}

double subset_sigma_min(const Eigen::MatrixXd& x, const std::vector<int>& c) {
  Eigen::MatrixXd sub(x.rows(), static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    sub.col(static_cast<Eigen::Index>(k)) = x.col(c[k]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub.transpose() * sub);
  return std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
}

double subset_inner_value(const Eigen::VectorXd& abs_dots, const IndexSet& i) {
  double value = 0.0;
  for (int j : i) {
    value = std::max(value, abs_dots(j));
  }
  return value;
}

void require_unit(const Eigen::VectorXd& v) {
  if (std::abs(v.norm() - 1.0) > 1e-10) {
    throw InvalidDirectionError();
  }
}

// Minimizing member of the family at the given |X^t v| profile; the first
// (lexicographically smallest) minimizer wins.
std::pair<double, const IndexSet*> min_over_family(
    const Eigen::VectorXd& abs_dots, const std::vector<IndexSet>& family) {
  double best = std::numeric_limits<double>::infinity();
  const IndexSet* arg = nullptr;
  for (const auto& i : family) {
    const double value = subset_inner_value(abs_dots, i);
    if (value < best) {
      best = value;
      arg = &i;
    }
  }
  return {best, arg};
}

}  // namespace

GammaParams::GammaParams(int s_, double rho) : s(s_), rho_minus(rho) {
  if (s < 1) {
    throw OutOfRangeError("subset cardinality must be >= 1");
  }
  if (!(rho > 0.0 && rho < 1.0)) {
    throw OutOfRangeError("rho_minus must lie in (0, 1)");
  }
}

std::vector<IndexSet> admissible_subsets(const DesignMatrix& x,
                                         const GammaParams& params,
                                         long long enumeration_cap) {
  const int p = static_cast<int>(x.cols());
  if (params.s > p) {
    return {};
  }
  const long long count = binomial_capped(p, params.s, enumeration_cap);
  if (count > enumeration_cap) {
    throw TooLargeError("C(" + std::to_string(p) + ", " +
                        std::to_string(params.s) + ") exceeds the cap of " +
                        std::to_string(enumeration_cap) + " subsets");
  }
  std::vector<IndexSet> family;
  for_each_combination(p, params.s, [&](const std::vector<int>& c) {
    if (subset_sigma_min(x.data(), c) >= params.rho_minus) {
      family.emplace_back(std::vector<int>(c));
    }
  });
  return family;
}

std::pair<double, IndexSet> inner_inf_exact(const DesignMatrix& x,
                                            const Eigen::VectorXd& v,
                                            const GammaParams& params,
                                            long long enumeration_cap) {
  require_unit(v);
  if (v.size() != x.rows()) {
    throw DimensionMismatchError("direction length must equal row count");
  }
  const auto family = admissible_subsets(x, params, enumeration_cap);
  if (family.empty()) {
    throw NoAdmissibleSubsetError();
  }
  const Eigen::VectorXd abs_dots = (x.data().transpose() * v).cwiseAbs();
  const auto [value, arg] = min_over_family(abs_dots, family);
  return {value, *arg};
}

EpsilonNet epsilon_net(int d, double epsilon) {
  if (d < 1 || d > 3) {
    throw DimensionUnsupportedError(d);
  }
  if (!(epsilon > 0.0 && epsilon <= 2.0)) {
    throw OutOfRangeError("net resolution must lie in (0, 2]");
  }
  EpsilonNet net;
  net.dimension = d;
  net.epsilon = epsilon;
  if (d == 1) {
    net.points.push_back(Eigen::VectorXd::Constant(1, 1.0));
    net.points.push_back(Eigen::VectorXd::Constant(1, -1.0));
    return net;
  }
  if (d == 2) {
    // Angular spacing 2*asin(eps/2) leaves every circle point within
    // chord distance 2*sin(asin(eps/2)/2) <= eps of the grid.
    const double spacing = 2.0 * std::asin(std::min(1.0, epsilon / 2.0));
    const int count = std::max(
        2, static_cast<int>(std::ceil(2.0 * std::numbers::pi / spacing)));
    for (int k = 0; k < count; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / count;
      Eigen::VectorXd v(2);
      v << std::cos(theta), std::sin(theta);
      net.points.push_back(std::move(v));
    }
    return net;
  }
  // d == 3: golden-spiral points; count ~ 20/eps^2 keeps the empirical
  // covering radius safely below eps while staying under the
  // 2d(1 + 2/eps)^(d-1) cardinality bound.
  const int count =
      std::max(6, static_cast<int>(std::ceil(20.0 / (epsilon * epsilon))));
  const double golden_angle = std::numbers::pi * (std::sqrt(5.0) + 1.0);
  for (int k = 0; k < count; ++k) {
    const double z = -1.0 + (2.0 * k + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden_angle * k;
    Eigen::VectorXd v(3);
    v << r * std::cos(theta), r * std::sin(theta), z;
    v /= v.norm();
    net.points.push_back(std::move(v));
  }
  return net;
}

bool covering_certificate(const EpsilonNet& net, int probes, Seed seed) {
  Rng rng(seed);
  for (int t = 0; t < probes; ++t) {
    const Eigen::VectorXd probe = sample_unit_vector(net.dimension, rng);
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& point : net.points) {
      nearest = std::min(nearest, (probe - point).norm());
      if (nearest <= net.epsilon) break;
    }
    if (nearest > net.epsilon) {
      return false;
    }
  }
  return true;
}

GammaInterval gamma_exact(const DesignMatrix& x, const GammaParams& params,
                          double epsilon, long long enumeration_cap) {
  if (x.rows() > 3) {
    throw DimensionUnsupportedError(static_cast<int>(x.rows()));
  }
  if (!x.is_normalized()) {
    throw NotNormalizedError();  // the +epsilon slack needs unit columns
  }
  const auto family = admissible_subsets(x, params, enumeration_cap);
  if (family.empty()) {
    throw NoAdmissibleSubsetError();
  }
  const EpsilonNet net = epsilon_net(static_cast<int>(x.rows()), epsilon);
  GammaInterval result;
  result.lo = -1.0;
  for (const auto& v : net.points) {
    const Eigen::VectorXd abs_dots = (x.data().transpose() * v).cwiseAbs();
    const auto [value, arg] = min_over_family(abs_dots, family);
    if (value > result.lo) {
      result.lo = value;
      result.best.direction = v;
      result.best.subset = *arg;
      result.best.inner_value = value;
    }
  }
  result.hi = result.lo + epsilon;
  result.best.sigma_min = submatrix_extremes(x, result.best.subset).sigma_min;
  return result;
}

IndexSet greedy_outer_set(const DesignMatrix& x, const Eigen::VectorXd& v,
                          double kappa, int s) {
  const int p = static_cast<int>(x.cols());
  const long long target = std::min(
      static_cast<long long>(std::ceil(kappa * s)),
      static_cast<long long>(p / 2));
  if (target < s) {
    throw TargetTooSmallError("outer set target " + std::to_string(target) +
                              " is smaller than the subset size " +
                              std::to_string(s));
  }
  const int m = static_cast<int>(target);
  const Eigen::VectorXd abs_dots = (x.data().transpose() * v).cwiseAbs();
  std::vector<bool> chosen(static_cast<std::size_t>(p), false);
  std::vector<int> picks;
  picks.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    int arg = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p; ++j) {
      if (!chosen[static_cast<std::size_t>(j)] && abs_dots(j) < best) {
        best = abs_dots(j);
        arg = j;
      }
    }
    chosen[static_cast<std::size_t>(arg)] = true;
    picks.push_back(arg);
  }
  return IndexSet::sorted(std::move(picks));
}

IndexSet extract_conditioned_subset(const DesignMatrix& x,
                                    const IndexSet& outer,
                                    const GammaParams& params, int max_tries,
                                    Seed seed) {
  if (outer.size() < params.s) {
    throw TargetTooSmallError("outer set has " + std::to_string(outer.size()) +
                              " indices, need at least " +
                              std::to_string(params.s));
  }
  const double radius = 1.0 - params.rho_minus;
  Rng rng(seed);
  std::vector<int> pool = outer.indices();
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    // Partial Fisher-Yates: the first s entries are a uniform s-subset.
    for (int k = 0; k < params.s; ++k) {
      const auto offset = static_cast<std::size_t>(
          rng.uniform_below(static_cast<std::uint64_t>(pool.size() - k)));
      std::swap(pool[static_cast<std::size_t>(k)],
                pool[static_cast<std::size_t>(k) + offset]);
    }
    IndexSet candidate = IndexSet::sorted(
        std::vector<int>(pool.begin(), pool.begin() + params.s));
    const Eigen::MatrixXd sub = select_columns(x.data(), candidate);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub.transpose() * sub);
    const auto& ev = eig.eigenvalues();
    const double deviation =
        std::max(std::abs(ev(0) - 1.0), std::abs(ev(ev.size() - 1) - 1.0));
    const double sigma_min = std::sqrt(std::max(0.0, ev(0)));
    // The Gram test is the acceptance rule; the direct sigma_min check is
    // authoritative for admissibility.
    if (deviation <= radius && sigma_min >= params.rho_minus) {
      return candidate;
    }
  }
  throw ExhaustedError(max_tries);
}

GammaEstimate gamma_estimate(const DesignMatrix& x, const GammaParams& params,
                             int directions, double kappa, Seed seed,
                             int max_tries) {
  if (directions < 1) {
    throw OutOfRangeError("at least one direction is required");
  }
  const int n = static_cast<int>(x.rows());
  GammaEstimate estimate;
  estimate.method = "monte-carlo-greedy";
  estimate.directions = directions;
  for (int d = 0; d < directions; ++d) {
    Rng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(d)));
    const Eigen::VectorXd v = sample_unit_vector(n, rng);
    const IndexSet outer = greedy_outer_set(x, v, kappa, params.s);
    IndexSet subset;
    try {
      subset = extract_conditioned_subset(
          x, outer, params, max_tries,
          derive_seed(seed, 2 * static_cast<std::uint64_t>(d) + 1));
    } catch (const ExhaustedError&) {
      ++estimate.exhausted_directions;
      continue;
    }
    DirectionCertificate cert;
    cert.direction = v;
    cert.subset = subset;
    cert.inner_value =
        subset_inner_value((x.data().transpose() * v).cwiseAbs(), subset);
    cert.sigma_min = submatrix_extremes(x, subset).sigma_min;
    estimate.value = std::max(estimate.value, cert.inner_value);
    estimate.certificates.push_back(std::move(cert));
  }
  if (estimate.certificates.empty()) {
    throw ExhaustedError(max_tries);
  }
  return estimate;
}

}  // namespace sparsereg
