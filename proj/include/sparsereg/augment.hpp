#pragma once

#include <Eigen/Dense>
#include <optional>

#include "sparsereg/lasso.hpp"
#include "sparsereg/matrix.hpp"
#include "sparsereg/rng.hpp"

namespace sparsereg {

// Appending a matrix with unit-norm columns can only shrink the index, so
// appending p0 random sphere columns transfers the sphere ensemble's
// 80 log(p0)/p0 bound to any design. The configuration below drives the
// choice of p0 and the augmented lambda rule.
struct AugmentConfig {
  double L = 0.5;               // strictness factor in (0, 1)
  double nu = 0.0;
  double rho_minus = 0.5;
  double sigma_min_star = 0.0;  // lower proxy for sigma_min(X_S)
  double sigma_max_star = 0.0;  // upper proxy for max_{|T|<=n} sigma_max(X_T)
  long p0_cap = 1000000;
  Seed seed;
  // Test bypass: skip choose_p0 and append exactly this many columns.
  std::optional<int> forced_p0;
};

struct AugmentedFit {
  LassoFit fit;             // over p + p0 coefficients
  Eigen::VectorXd beta_x;   // first p entries
  Eigen::VectorXd beta_0;   // last p0 entries
  int p0 = 0;
  Seed seed;
};

// Smallest p0 >= 11 with 80 log(p0)/p0 strictly below
// L * rho * sigma_min_star / (nu * n * sigma_max_star), found by forward
// scan (80 log(x)/x is decreasing for x >= 3, so the first hit is minimal).
// Throws InfeasibleError when the threshold is nonpositive or the scan
// passes p0_cap.
int choose_p0(const AugmentConfig& config, int n);

// Samples X0 with choose_p0 columns (or forced_p0), fits the LASSO on
// [X, X0] and splits the coefficients.
AugmentedFit fit_augmented(const DesignMatrix& x, const Eigen::VectorXd& y,
                           double lambda, const AugmentConfig& config,
                           double tol = kDefaultFitTol,
                           int max_sweeps = kDefaultMaxSweeps);

// Lambda rule for the augmented problem: identical formulas with p
// replaced by p + p0 and the proxies in place of the exact extremes;
// gamma_bound should be the appended ensemble's index bound (monotonicity
// makes it valid for the concatenation).
BoundReport lambda_min_augmented(const AugmentConfig& config,
                                 double gamma_bound, int n, long p, long p0,
                                 double sigma, double alpha);

// 0.5 * ||X_sharp (beta_hat - beta_padded)||^2, the prediction error in
// the augmented model against the zero-padded truth.
double augmented_prediction_error(const DesignMatrix& x_sharp,
                                  const Eigen::VectorXd& beta_hat_sharp,
                                  const Eigen::VectorXd& beta_true_padded);

}  // namespace sparsereg
