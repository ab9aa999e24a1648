#include "sparsereg/augment.hpp"

#include <cmath>

#include "sparsereg/errors.hpp"
#include "sparsereg/sphere.hpp"

namespace sparsereg {

namespace {

void validate(const AugmentConfig& config) {
  if (!(config.L > 0.0 && config.L < 1.0)) {
    throw OutOfRangeError("L must lie in (0, 1)");
  }
  if (!(config.sigma_min_star <= config.sigma_max_star)) {
    throw OutOfRangeError("sigma_min_star must not exceed sigma_max_star");
  }
}

}  // namespace

int choose_p0(const AugmentConfig& config, int n) {
  validate(config);
  const double threshold = config.L * config.rho_minus *
                           config.sigma_min_star /
                           (config.nu * n * config.sigma_max_star);
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw InfeasibleError("p0 threshold is nonpositive");
  }
  for (long p0 = 11; p0 <= config.p0_cap; ++p0) {
    if (80.0 * std::log(static_cast<double>(p0)) / p0 < threshold) {
      return static_cast<int>(p0);
    }
  }
  throw InfeasibleError("no p0 <= " + std::to_string(config.p0_cap) +
                        " satisfies the index-transfer inequality");
}

AugmentedFit fit_augmented(const DesignMatrix& x, const Eigen::VectorXd& y,
                           double lambda, const AugmentConfig& config,
                           double tol, int max_sweeps) {
  if (!x.is_normalized()) {
    throw NotNormalizedError();
  }
  const int p0 = config.forced_p0 ? *config.forced_p0 : choose_p0(config, static_cast<int>(x.rows()));
  if (p0 < 0) {
    throw OutOfRangeError("forced p0 must be nonnegative");
  }
  const DesignMatrix x0 =
      sample_sphere_matrix(static_cast<int>(x.rows()), p0, config.seed);
  const DesignMatrix x_sharp = concat(x, x0);
  AugmentedFit result;
  result.fit = fit(x_sharp, y, lambda, tol, max_sweeps);
  result.beta_x = result.fit.beta.head(x.cols());
  result.beta_0 = result.fit.beta.tail(p0);
  result.p0 = p0;
  result.seed = config.seed;
  return result;
}

BoundReport lambda_min_augmented(const AugmentConfig& config,
                                 double gamma_bound, int n, long p, long p0,
                                 double sigma, double alpha) {
  validate(config);
  TheoremInputs inputs;
  inputs.sigma = sigma;
  inputs.alpha = alpha;
  inputs.p = p + p0;
  inputs.nu = config.nu;
  inputs.n = n;
  inputs.rho_minus = config.rho_minus;
  inputs.sigma_min_S = config.sigma_min_star;
  inputs.sigma_max_star = config.sigma_max_star;
  inputs.gamma = gamma_bound;
  BoundReport report = lambda_min_theorem(inputs);
  report.notes += (report.notes.empty() ? "" : "; ");
  report.notes += "augmented problem: p replaced by p + p0 = " +
                  std::to_string(p + p0) +
                  ", proxies sigma_min_star/sigma_max_star in place of the "
                  "exact extremes";
  return report;
}

double augmented_prediction_error(const DesignMatrix& x_sharp,
                                  const Eigen::VectorXd& beta_hat_sharp,
                                  const Eigen::VectorXd& beta_true_padded) {
  if (beta_hat_sharp.size() != x_sharp.cols() ||
      beta_true_padded.size() != x_sharp.cols()) {
    throw DimensionMismatchError(
        "coefficient vectors must match the augmented column count");
  }
  return 0.5 *
         (x_sharp.data() * (beta_hat_sharp - beta_true_padded)).squaredNorm();
}

}  // namespace sparsereg
