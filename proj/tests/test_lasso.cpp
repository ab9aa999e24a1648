#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsereg/lasso.hpp"
#include "sparsereg/sphere.hpp"

using namespace sparsereg;

namespace {

DesignMatrix random_normalized(int n, int p, Rng& rng) {
  return normalize_columns(DesignMatrix(oracles::random_gaussian(n, p, rng)));
}

Eigen::VectorXd random_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("lambda above the correlation cap forces the zero solution") {
  Rng rng(Seed{70});
  for (int round = 0; round < 20; ++round) {
    const DesignMatrix x = random_normalized(10, 15, rng);
    const Eigen::VectorXd y = random_vector(10, rng);
    const double cap = (x.data().transpose() * y).cwiseAbs().maxCoeff();
    const LassoFit zero = fit(x, y, 1.0001 * cap);
    CHECK(zero.beta.cwiseAbs().maxCoeff() == 0.0);
    CHECK(zero.support.empty());
    CHECK(zero.kkt == 0.0);

    const LassoFit active = fit(x, y, 0.9999 * cap);
    CHECK(!active.support.empty());
  }
}

TEST_CASE("orthonormal two-dimensional closed form") {
  const DesignMatrix eye(Eigen::MatrixXd::Identity(2, 2), true);
  Eigen::VectorXd y(2);
  y << 3.0, 0.5;
  const LassoFit result = fit(eye, y, 1.0, 1e-12);
  CHECK(result.beta(0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(result.beta(1) == 0.0);
  CHECK(result.support == IndexSet({0}));
}

TEST_CASE("orthonormal designs reduce to coordinatewise soft-thresholding") {
  Rng rng(Seed{71});
  for (int round = 0; round < 100; ++round) {
    const int n = 2 + static_cast<int>(rng.uniform_below(20));
    const DesignMatrix x(oracles::random_orthonormal(n, rng), true);
    const Eigen::VectorXd y = random_vector(n, rng);
    const double cap = (x.data().transpose() * y).cwiseAbs().maxCoeff();
    const double lambda = (0.05 + 0.5 * rng.uniform()) * cap;
    const LassoFit result = fit(x, y, lambda, 1e-10);
    const Eigen::VectorXd expected =
        oracles::soft_threshold_vector(x.data().transpose() * y, lambda);
    CHECK((result.beta - expected).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("duplicated columns leave the optimal value unchanged") {
  Rng rng(Seed{72});
  const DesignMatrix base = random_normalized(8, 5, rng);
  Eigen::MatrixXd doubled(8, 10);
  doubled.leftCols(5) = base.data();
  doubled.rightCols(5) = base.data();
  const DesignMatrix dup(doubled, true);
  const Eigen::VectorXd y = random_vector(8, rng);
  const double lambda = 0.25;
  const LassoFit plain = fit(base, y, lambda, 1e-11);
  const LassoFit with_dup = fit(dup, y, lambda, 1e-11);
  CHECK(with_dup.objective ==
        doctest::Approx(plain.objective).epsilon(1e-8));
}

TEST_CASE("objective decreases sweep over sweep") {
  Rng rng(Seed{73});
  const DesignMatrix x = random_normalized(20, 60, rng);
  const Eigen::VectorXd y = random_vector(20, rng);
  const LassoFit result = fit(x, y, 0.05);
  REQUIRE(result.objective_per_sweep.size() >= 2);
  for (std::size_t k = 1; k < result.objective_per_sweep.size(); ++k) {
    CHECK(result.objective_per_sweep[k] <=
          result.objective_per_sweep[k - 1] +
              1e-12 * (1.0 + std::abs(result.objective_per_sweep[k - 1])));
  }
  CHECK(result.kkt <= kDefaultFitTol);
  // Reported objective is the recomputed one.
  CHECK(result.objective ==
        doctest::Approx(objective_value(x, y, result.beta, 0.05))
            .epsilon(1e-12));
}

TEST_CASE("kkt residual closed forms") {
  Rng rng(Seed{74});
  const DesignMatrix x = random_normalized(10, 12, rng);
  const Eigen::VectorXd y = random_vector(10, rng);
  const double cap = (x.data().transpose() * y).cwiseAbs().maxCoeff();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(12);
  CHECK(kkt_residual(x, y, zero, 1.1 * cap) == 0.0);
  CHECK(kkt_residual(x, y, zero, 0.5 * cap) ==
        doctest::Approx(0.5 * cap).epsilon(1e-14));

  // Exact orthonormal solution has zero residual.
  const DesignMatrix q(oracles::random_orthonormal(6, rng), true);
  const Eigen::VectorXd y2 = random_vector(6, rng);
  const Eigen::VectorXd beta =
      oracles::soft_threshold_vector(q.data().transpose() * y2, 0.3);
  CHECK(kkt_residual(q, y2, beta, 0.3) <= 1e-12);
}

TEST_CASE("non-convergence carries the partial fit") {
  Rng rng(Seed{75});
  const DesignMatrix x = random_normalized(15, 40, rng);
  const Eigen::VectorXd y = random_vector(15, rng);
  CHECK_THROWS_AS(fit(x, y, 0.01, 1e-14, 1), NotConvergedError);
  try {
    fit(x, y, 0.01, 1e-14, 1);
  } catch (const NotConvergedError& e) {
    CHECK(e.partial.sweeps == 1);
    CHECK_FALSE(e.partial.converged);
    CHECK(e.partial.beta.size() == 40);
  }
}

TEST_CASE("fit validates inputs") {
  Rng rng(Seed{76});
  const DesignMatrix raw(oracles::random_gaussian(5, 4, rng));
  const Eigen::VectorXd y = random_vector(5, rng);
  CHECK_THROWS_AS(fit(raw, y, 0.1), NotNormalizedError);
  const DesignMatrix x = normalize_columns(raw);
  CHECK_THROWS_AS(fit(x, random_vector(4, rng), 0.1),
                  DimensionMismatchError);
  CHECK_THROWS_AS(fit(x, y, 0.0), OutOfRangeError);
}

TEST_CASE("sparsify_support is the identity when already narrow") {
  Rng rng(Seed{77});
  const DesignMatrix x = random_normalized(10, 6, rng);
  const Eigen::VectorXd y = random_vector(10, rng);
  const LassoFit result = fit(x, y, 0.2);
  const LassoFit reduced = sparsify_support(x, y, result, 10);
  CHECK(reduced.beta == result.beta);
}

TEST_CASE("sparsify_support moves duplicated mass onto one column") {
  // Two copies of one orthonormal design: every active column has an
  // exact duplicate, so the support can be halved without moving the
  // objective.
  Rng rng(Seed{78});
  const int n = 6;
  const Eigen::MatrixXd q = oracles::random_orthonormal(n, rng);
  Eigen::MatrixXd doubled(n, 2 * n);
  doubled.leftCols(n) = q;
  doubled.rightCols(n) = q;
  const DesignMatrix x(doubled, true);
  Eigen::VectorXd y = random_vector(n, rng) * 3.0;
  const LassoFit raw_fit = fit(x, y, 0.1, 1e-12);
  if (raw_fit.support.size() > n) {
    const LassoFit reduced = sparsify_support(x, y, raw_fit, n);
    CHECK(reduced.support.size() <= n);
    CHECK(reduced.objective ==
          doctest::Approx(raw_fit.objective).epsilon(1e-10));
  }
  // p <= n is always the identity.
  const DesignMatrix narrow(q, true);
  const LassoFit plain = fit(narrow, y, 0.1);
  CHECK(sparsify_support(narrow, y, plain, n).beta == plain.beta);
}

TEST_CASE("sparsify_support reports failure for unattainable caps") {
  // Orthonormal active columns are independent; no elimination can
  // preserve the objective, so a cap below the support size must fail.
  Rng rng(Seed{79});
  const DesignMatrix x(oracles::random_orthonormal(5, rng), true);
  const Eigen::VectorXd y = random_vector(5, rng) * 4.0;
  const LassoFit result = fit(x, y, 0.05, 1e-12);
  if (result.support.size() >= 2) {
    CHECK_THROWS_AS(sparsify_support(x, y, result, 1), ReductionFailedError);
  }
  CHECK_THROWS_AS(
      sparsify_support(x, y, LassoFit{}, 1),
      OutOfRangeError);  // unconverged input rejected
}

TEST_CASE("lambda rule: vanishing index limit") {
  TheoremInputs in;
  in.sigma = 0.7;
  in.alpha = 1.0;
  in.p = 100;
  in.nu = 0.25;
  in.n = 40;
  in.rho_minus = 0.5;
  in.sigma_min_S = 0.9;
  in.sigma_max_star = 1.5;
  in.gamma = 0.0;
  const BoundReport report = lambda_min_theorem(in);
  CHECK(report.precondition_nu_ok);
  REQUIRE(report.B.has_value());
  CHECK(*report.B == 0.0);
  REQUIRE(report.lambda_min.has_value());
  const double expected =
      0.7 * std::sqrt(3.0 * std::log(100.0) + std::log(2.0));
  CHECK(*report.lambda_min == doctest::Approx(expected).epsilon(1e-14));
  CHECK(report.probability_headline ==
        doctest::Approx(1.0 - 0.01).epsilon(1e-14));
  CHECK(report.probability_union ==
        doctest::Approx(1.0 - 0.03).epsilon(1e-14));
}

TEST_CASE("lambda rule: infeasible denominator flags out") {
  TheoremInputs in;
  in.sigma = 1.0;
  in.alpha = 1.0;
  in.p = 50;
  in.nu = 0.5;
  in.n = 20;
  in.rho_minus = 0.5;
  in.sigma_min_S = 0.5;
  in.sigma_max_star = 2.0;
  in.gamma = 0.9;  // nu*n*gamma*sigma_max = 18 >> rho*sigma_min
  const BoundReport report = lambda_min_theorem(in);
  CHECK_FALSE(report.precondition_nu_ok);
  CHECK_FALSE(report.B.has_value());
  CHECK_FALSE(report.lambda_min.has_value());
  CHECK(!report.notes.empty());
}

TEST_CASE("lambda rule: numeric instance against a second evaluation") {
  // Inputs arranged so B = 0.5 exactly: nu*n = 10, sigma_max = 1.5,
  // rho*sigma_min = 0.5, gamma = 1/70.
  TheoremInputs in;
  in.sigma = 1.0;
  in.alpha = 1.0;
  in.p = 100;
  in.nu = 1.0;
  in.n = 10;
  in.rho_minus = 0.5;
  in.sigma_min_S = 1.0;
  in.sigma_max_star = 1.5;
  in.gamma = 1.0 / 70.0;
  const BoundReport report = lambda_min_theorem(in);
  REQUIRE(report.B.has_value());
  CHECK(*report.B == doctest::Approx(0.5).epsilon(1e-12));
  // Independent re-evaluation, spelled out term by term.
  const double term1 = 0.5 * 1.5 * std::sqrt(2.0 * std::log(100.0) +
                                             std::log(20.0));
  const double term2 = std::sqrt(3.0 * std::log(100.0) + std::log(2.0));
  REQUIRE(report.lambda_min.has_value());
  CHECK(*report.lambda_min ==
        doctest::Approx(term1 + term2).epsilon(1e-13));
  REQUIRE(report.C.has_value());
  const double lam = term1 + term2;
  const double c_expected =
      (lam + term2) * (std::sqrt(2.0 * std::log(100.0) + std::log(20.0)) +
                       lam) /
      0.5;
  CHECK(*report.C == doctest::Approx(c_expected).epsilon(1e-12));
}

TEST_CASE("prediction bound formula properties") {
  TheoremInputs in;
  in.sigma = 0.3;
  in.alpha = 1.5;
  in.p = 200;
  in.nu = 0.5;
  in.n = 32;
  in.rho_minus = 0.5;
  in.sigma_min_S = 0.8;
  in.sigma_max_star = 1.4;
  in.gamma = 0.01;

  const double base = prediction_bound(in, 0.4, 3);
  // Linear in s.
  CHECK(prediction_bound(in, 0.4, 6) == doctest::Approx(2.0 * base).epsilon(1e-14));
  // Strictly increasing in lambda.
  CHECK(prediction_bound(in, 0.8, 3) > base);
  // Nondecreasing in sigma and alpha.
  TheoremInputs noisier = in;
  noisier.sigma = 0.6;
  CHECK(prediction_bound(noisier, 0.4, 3) > base);
  TheoremInputs stricter = in;
  stricter.alpha = 2.5;
  CHECK(prediction_bound(stricter, 0.4, 3) > base);

  CHECK_THROWS_AS(prediction_bound(in, 0.4, 17), SparsityTooLargeError);

  // Cross-check one value against a literal transcription.
  const double log_p = std::log(200.0);
  const double expected =
      3.0 *
      (0.4 + 0.3 * std::sqrt(4.0 * log_p + std::log(2.0))) *
      (0.3 * std::sqrt(3.0 * log_p + std::log(32.0)) + 0.4) /
      (0.5 * 0.8);
  CHECK(base == doctest::Approx(expected).epsilon(1e-13));
}
