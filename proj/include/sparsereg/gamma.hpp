#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsereg/matrix.hpp"
#include "sparsereg/rng.hpp"

namespace sparsereg {

// The index computed here measures, for the worst unit direction v, how
// close to orthogonal to v the best well-conditioned s-column subset can
// be:
//
//   gamma = sup over unit v of  inf over admissible I of  ||X_I^t v||_inf
//
// where a subset I of s columns is admissible when sigma_min(X_I) >= rho.
// Small gamma means every direction admits a well-conditioned subset that
// is nearly orthogonal to it, which is what the prediction bound needs.
// Badly conditioned or duplicated column groups do not hurt the index:
// they simply drop out of the admissible family.

struct GammaParams {
  int s;
  double rho_minus;
  GammaParams(int s_, double rho);
};

// Evidence for one examined direction: the admissible subset the search
// settled on and its inner value. Recomputing ||X_I^t v||_inf from (v, I)
// reproduces inner_value to 1e-12.
struct DirectionCertificate {
  Eigen::VectorXd direction;
  IndexSet subset;
  double inner_value = 0.0;
  double sigma_min = 0.0;
};

struct GammaEstimate {
  double value = 0.0;
  std::string method;  // "exact-net" | "monte-carlo-greedy"
  std::optional<double> epsilon;
  int directions = 0;
  std::vector<DirectionCertificate> certificates;
  int exhausted_directions = 0;
};

// Finite covering of the unit sphere: every point of the sphere lies
// within epsilon of some net point.
struct EpsilonNet {
  int dimension = 0;
  double epsilon = 0.0;
  std::vector<Eigen::VectorXd> points;
};

// Two-sided enclosure [lo, lo + epsilon] of the exact index, with the
// certificate of the net point attaining lo.
struct GammaInterval {
  double lo = 0.0;
  double hi = 0.0;
  DirectionCertificate best;
};

// kappa controls the greedy outer-set size m = min(ceil(kappa*s), p/2).
// Default 4*exp(-2*(ln 2 - 1)) = e^2.
inline constexpr double kDefaultKappa = 7.38905609893065;

// Cap on exact subset enumeration.
inline constexpr long long kDefaultEnumerationCap = 100000;

inline constexpr int kDefaultExtractionTries = 50;

// All s-subsets I with sigma_min(X_I) >= rho, in lexicographic order.
// Throws TooLargeError when C(p, s) exceeds the cap; an empty family is a
// valid result, not an error.
std::vector<IndexSet> admissible_subsets(
    const DesignMatrix& x, const GammaParams& params,
    long long enumeration_cap = kDefaultEnumerationCap);

// Exact inner infimum at one unit direction: the admissible subset with
// the smallest ||X_I^t v||_inf (ties broken lexicographically) and its
// value. Throws NoAdmissibleSubsetError when the family is empty.
std::pair<double, IndexSet> inner_inf_exact(
    const DesignMatrix& x, const Eigen::VectorXd& v, const GammaParams& params,
    long long enumeration_cap = kDefaultEnumerationCap);

// Deterministic covering net of the unit sphere of R^d, d in {1, 2, 3}.
// Cardinality stays within 2d(1 + 2/epsilon)^(d-1).
EpsilonNet epsilon_net(int d, double epsilon);

// Probabilistic covering check: true when every random probe lies within
// net.epsilon of some net point.
bool covering_certificate(const EpsilonNet& net, int probes, Seed seed);

// Exact-net enclosure of the index for n <= 3: lo is the maximum of the
// inner infimum over the net, and the true value lies in [lo, lo + eps]
// because columns are unit-norm.
GammaInterval gamma_exact(const DesignMatrix& x, const GammaParams& params,
                          double epsilon,
                          long long enumeration_cap = kDefaultEnumerationCap);

// The m = min(ceil(kappa*s), floor(p/2)) columns with smallest |<X_j, v>|,
// selected one at a time, lowest index winning ties. Equals the first m
// entries of a stable sort by |<X_j, v>|.
IndexSet greedy_outer_set(const DesignMatrix& x, const Eigen::VectorXd& v,
                          double kappa, int s);

// Draws uniformly random s-subsets of `outer` until one passes both
// acceptance checks: Gram deviation ||X_S^t X_S - I|| <= 1 - rho, and the
// authoritative direct check sigma_min(X_S) >= rho. Throws ExhaustedError
// after max_tries rejections.
IndexSet extract_conditioned_subset(const DesignMatrix& x,
                                    const IndexSet& outer,
                                    const GammaParams& params, int max_tries,
                                    Seed seed);

// Monte-Carlo estimate: for each sampled direction, build the greedy outer
// set, extract a conditioned subset, and record the inner value. Each
// per-direction value upper-bounds the exact inner infimum there (the
// extracted subset is admissible), but the max over finitely many sampled
// directions under-reaches the supremum, so the estimate is lower-biased
// for the index itself.
GammaEstimate gamma_estimate(const DesignMatrix& x, const GammaParams& params,
                             int directions, double kappa, Seed seed,
                             int max_tries = kDefaultExtractionTries);

}  // namespace sparsereg
