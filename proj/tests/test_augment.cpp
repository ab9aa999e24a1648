#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsereg/augment.hpp"
#include "sparsereg/gamma.hpp"
#include "sparsereg/sphere.hpp"

using namespace sparsereg;

namespace {

// With L = rho = 1/2, unit proxies and n = 1, the right-hand side of the
// p0 inequality is 0.25 / nu; solve for nu to hit the wanted threshold.
AugmentConfig config_with_threshold(double threshold) {
  AugmentConfig config;
  config.L = 0.5;
  config.rho_minus = 0.5;
  config.sigma_min_star = 1.0;
  config.sigma_max_star = 1.0;
  config.nu = 0.25 / threshold;
  return config;
}

// Independent forward scan, written from the inequality itself.
int scan_for_p0(double threshold, long cap) {
  for (long x = 11; x <= cap; ++x) {
    if (80.0 * std::log(static_cast<double>(x)) / x < threshold) {
      return static_cast<int>(x);
    }
  }
  return -1;
}

Eigen::VectorXd random_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("choose_p0 scans past the floor when the threshold bites") {
  // 80 log(11)/11 = 17.44 > 10, so the scan continues; the oracle scan
  // lands on the first integer where 80 log(x)/x < 10.
  const AugmentConfig config = config_with_threshold(10.0);
  const int expected = scan_for_p0(10.0, 1000);
  CHECK(expected == 27);
  CHECK(choose_p0(config, 1) == expected);
}

TEST_CASE("choose_p0 returns the floor for very loose thresholds") {
  // 80 log(11)/11 = 17.44 < 20: the floor value 11 already passes.
  const AugmentConfig config = config_with_threshold(20.0);
  CHECK(choose_p0(config, 1) == 11);
}

TEST_CASE("choose_p0 near the 0.5526 boundary") {
  // 80 log(1000)/1000 = 0.55262 > 0.5526 (strict fails at 1000), and
  // 1001 passes. Bracket with a monotone bisection oracle.
  const double threshold = 0.5526;
  double lo = 1000.0, hi = 2000.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (80.0 * std::log(mid) / mid < threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const int oracle = static_cast<int>(std::ceil(hi - 1e-9));
  CHECK(oracle == 1001);
  CHECK(80.0 * std::log(1000.0) / 1000.0 > threshold);
  const AugmentConfig config = config_with_threshold(threshold);
  CHECK(choose_p0(config, 1) == 1001);
}

TEST_CASE("choose_p0 infeasible cases") {
  AugmentConfig config = config_with_threshold(0.5);
  config.sigma_min_star = 0.0;  // threshold collapses to zero
  CHECK_THROWS_AS(choose_p0(config, 1), InfeasibleError);

  AugmentConfig capped = config_with_threshold(0.01);
  capped.p0_cap = 100;  // required p0 is far beyond the cap
  CHECK_THROWS_AS(choose_p0(capped, 1), InfeasibleError);
}

TEST_CASE("choose_p0 minimality on a threshold sweep") {
  for (int k = 0; k < 20; ++k) {
    const double threshold = 0.05 * std::pow(10.0 / 0.05, k / 19.0);
    const AugmentConfig config = config_with_threshold(threshold);
    const int p0 = choose_p0(config, 1);
    CHECK(80.0 * std::log(static_cast<double>(p0)) / p0 < threshold);
    if (p0 > 11) {
      CHECK(80.0 * std::log(static_cast<double>(p0 - 1)) / (p0 - 1) >=
            threshold);
    }
  }
}

TEST_CASE("forced p0 = 0 reproduces the plain fit bitwise") {
  Rng rng(Seed{80});
  const DesignMatrix x = normalize_columns(
      DesignMatrix(oracles::random_gaussian(10, 20, rng)));
  const Eigen::VectorXd y = random_vector(10, rng);
  AugmentConfig config;
  config.nu = 0.2;
  config.sigma_min_star = 0.5;
  config.sigma_max_star = 2.0;
  config.seed = Seed{81};
  config.forced_p0 = 0;
  const AugmentedFit augmented = fit_augmented(x, y, 0.3, config);
  const LassoFit plain = fit(x, y, 0.3);
  CHECK(augmented.p0 == 0);
  CHECK(augmented.beta_0.size() == 0);
  CHECK(augmented.beta_x == plain.beta);
  CHECK(augmented.fit.objective == plain.objective);
}

TEST_CASE("augmented optimum never beats the plain optimum from above") {
  // Zero-padding the plain solution is feasible for the augmented
  // problem, so at tight tolerance the augmented objective is at most the
  // plain one (plus solver slack).
  Rng rng(Seed{82});
  for (int round = 0; round < 50; ++round) {
    const int n = 6 + static_cast<int>(rng.uniform_below(6));
    const int p = n + static_cast<int>(rng.uniform_below(10));
    const DesignMatrix x = normalize_columns(
        DesignMatrix(oracles::random_gaussian(n, p, rng)));
    const Eigen::VectorXd y = random_vector(n, rng);
    const double cap = (x.data().transpose() * y).cwiseAbs().maxCoeff();
    const double lambda = 0.3 * cap;
    AugmentConfig config;
    config.nu = 0.5;
    config.sigma_min_star = 0.5;
    config.sigma_max_star = 2.0;
    config.seed = derive_seed(Seed{83}, round);
    config.forced_p0 = 32;
    const LassoFit plain = fit(x, y, lambda, 1e-12);
    const AugmentedFit augmented = fit_augmented(x, y, lambda, config, 1e-12);
    CHECK(augmented.fit.objective <= plain.objective + 1e-10);
  }
}

TEST_CASE("augmented fits are reproducible") {
  Rng rng(Seed{84});
  const DesignMatrix x = normalize_columns(
      DesignMatrix(oracles::random_gaussian(8, 12, rng)));
  const Eigen::VectorXd y = random_vector(8, rng);
  AugmentConfig config;
  config.nu = 0.25;
  config.sigma_min_star = 0.4;
  config.sigma_max_star = 1.8;
  config.seed = Seed{85};
  config.forced_p0 = 40;
  const AugmentedFit a = fit_augmented(x, y, 0.2, config);
  const AugmentedFit b = fit_augmented(x, y, 0.2, config);
  CHECK(a.fit.beta == b.fit.beta);
  CHECK(a.fit.objective == b.fit.objective);
  CHECK(a.p0 == b.p0);
}

TEST_CASE("augmented lambda rule mirrors the plain rule at p + p0") {
  AugmentConfig config;
  config.nu = 1.0;
  config.rho_minus = 0.5;
  config.sigma_min_star = 1.0;
  config.sigma_max_star = 1.5;

  SUBCASE("vanishing index bound") {
    const BoundReport report =
        lambda_min_augmented(config, 0.0, 10, 90, 10, 1.0, 1.0);
    REQUIRE(report.B.has_value());
    CHECK(*report.B == 0.0);
    REQUIRE(report.lambda_min.has_value());
    CHECK(*report.lambda_min ==
          doctest::Approx(std::sqrt(3.0 * std::log(100.0) + std::log(2.0)))
              .epsilon(1e-13));
  }

  SUBCASE("nonpositive denominator flags out") {
    const BoundReport report =
        lambda_min_augmented(config, 0.9, 10, 90, 10, 1.0, 1.0);
    CHECK_FALSE(report.precondition_nu_ok);
    CHECK_FALSE(report.B.has_value());
  }

  SUBCASE("numeric instance against a literal transcription") {
    const double gamma_bound = 1.0 / 70.0;
    const BoundReport report =
        lambda_min_augmented(config, gamma_bound, 10, 60, 40, 1.0, 1.0);
    REQUIRE(report.B.has_value());
    CHECK(*report.B == doctest::Approx(0.5).epsilon(1e-12));
    const double term1 =
        0.5 * 1.5 * std::sqrt(2.0 * std::log(100.0) + std::log(20.0));
    const double term2 = std::sqrt(3.0 * std::log(100.0) + std::log(2.0));
    REQUIRE(report.lambda_min.has_value());
    CHECK(*report.lambda_min ==
          doctest::Approx(term1 + term2).epsilon(1e-13));
  }
}

TEST_CASE("augmented prediction error closed forms") {
  Rng rng(Seed{86});
  const DesignMatrix x_sharp = sample_sphere_matrix(6, 9, Seed{87});
  Eigen::VectorXd truth = Eigen::VectorXd::Zero(9);
  truth(2) = 1.0;
  truth(5) = -1.0;

  CHECK(augmented_prediction_error(x_sharp, truth, truth) == 0.0);

  // A single-coordinate bump of size delta on a unit column adds
  // delta^2 / 2 exactly.
  Eigen::VectorXd bumped = truth;
  bumped(4) += 0.7;
  CHECK(augmented_prediction_error(x_sharp, bumped, truth) ==
        doctest::Approx(0.5 * 0.49).epsilon(1e-12));

  // Random case against a direct norm evaluation.
  const Eigen::VectorXd guess = random_vector(9, rng);
  const double direct =
      0.5 * (x_sharp.data() * guess - x_sharp.data() * truth).squaredNorm();
  CHECK(augmented_prediction_error(x_sharp, guess, truth) ==
        doctest::Approx(direct).epsilon(1e-12));

  Eigen::VectorXd wrong_size = Eigen::VectorXd::Zero(8);
  CHECK_THROWS_AS(augmented_prediction_error(x_sharp, wrong_size, truth),
                  DimensionMismatchError);
}

TEST_CASE("index transfer on tiny instances") {
  // Same net, same parameters: the concatenation's net supremum is at
  // most the appended block's.
  for (int round = 0; round < 10; ++round) {
    Rng rng(derive_seed(Seed{88}, round));
    const DesignMatrix x = normalize_columns(
        DesignMatrix(oracles::random_gaussian(2, 3, rng)));
    const DesignMatrix x0 =
        sample_sphere_matrix(2, 6, derive_seed(Seed{89}, round));
    const GammaParams params(1, 0.5);
    const double eps = 0.05;
    const GammaInterval appended = gamma_exact(x0, params, eps);
    const GammaInterval merged = gamma_exact(concat(x, x0), params, eps);
    CHECK(merged.lo <= appended.lo);
  }
}
