#pragma once

#include <Eigen/Dense>

#include "sparsereg/matrix.hpp"
#include "sparsereg/rng.hpp"

namespace sparsereg {

// Law of |<u, v>| for u uniform on the unit sphere of R^n and any fixed
// unit v. The density on [0, 1] is proportional to (1 - z^2)^((n-3)/2), so
// |<u, v>|^2 follows Beta(1/2, (n-1)/2) and the CDF is a regularized
// incomplete beta function evaluated at z^2.
struct DotLaw {
  int n;
  explicit DotLaw(int n_);
};

// p0 i.i.d. columns, each a standard Gaussian n-vector divided by its norm.
// p0 = 0 yields an empty (but normalized) matrix. Column j is drawn from
// the j-th position of a single sequential stream, so the full matrix is a
// pure function of (n, p0, seed).
DesignMatrix sample_sphere_matrix(int n, int p0, Seed seed);

// One vector uniform on the unit sphere of R^n, consuming from rng.
Eigen::VectorXd sample_unit_vector(int n, Rng& rng);

// G(z) = P(|<u, v>| <= z) for z in [0, 1].
double dot_cdf(const DotLaw& law, double z);

namespace detail {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation (accurate to ~1e-15 for the parameter ranges used here).
double reg_inc_beta(double a, double b, double x);

}  // namespace detail

}  // namespace sparsereg
