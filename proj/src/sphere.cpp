#include "sparsereg/sphere.hpp"

#include <cmath>

#include "sparsereg/errors.hpp"

namespace sparsereg {

DotLaw::DotLaw(int n_) : n(n_) {
  if (n < 2) {
    throw OutOfRangeError("dot-product law requires dimension >= 2");
  }
}

Eigen::VectorXd sample_unit_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      v(i) = rng.normal();
    }
    const double norm = v.norm();
    if (norm > 1e-300) {
      return v / norm;
    }
  }
}

DesignMatrix sample_sphere_matrix(int n, int p0, Seed seed) {
  if (n < 1) {
    throw OutOfRangeError("sample_sphere_matrix requires n >= 1");
  }
  if (p0 < 0) {
    throw OutOfRangeError("sample_sphere_matrix requires p0 >= 0");
  }
  Rng rng(seed);
  Eigen::MatrixXd m(n, p0);
  for (int j = 0; j < p0; ++j) {
    m.col(j) = sample_unit_vector(n, rng);
  }
  return DesignMatrix(std::move(m), true);
}

namespace detail {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = a * std::log(x) + b * std::log1p(-x) -
                          (std::lgamma(a) + std::lgamma(b) -
                           std::lgamma(a + b));
  // Use the representation that converges fast on each side of the mean.
  // The inclusive comparison keeps the boundary point on the direct branch
  // (the reflected call would land exactly on its own boundary and recurse
  // forever).
  if (x <= (a + 1.0) / (a + b + 2.0)) {
    return std::exp(ln_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - reg_inc_beta(b, a, 1.0 - x);
}

}  // namespace detail

double dot_cdf(const DotLaw& law, double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw OutOfRangeError("dot_cdf argument must lie in [0, 1]");
  }
  if (z == 0.0) return 0.0;
  if (z == 1.0) return 1.0;
  return detail::reg_inc_beta(0.5, (law.n - 1) / 2.0, z * z);
}

}  // namespace sparsereg
