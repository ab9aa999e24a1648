#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsereg/sphere.hpp"
#include "sparsereg/verify.hpp"

using namespace sparsereg;

TEST_CASE("sampled columns are unit norm") {
  for (int n : {1, 2, 8, 32}) {
    const DesignMatrix x = sample_sphere_matrix(n, 40, Seed{101});
    CHECK(x.is_normalized());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      CHECK(std::abs(x.column(j).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("identical seeds reproduce identical matrices") {
  const DesignMatrix a = sample_sphere_matrix(8, 100, Seed{7});
  const DesignMatrix b = sample_sphere_matrix(8, 100, Seed{7});
  CHECK(a.data() == b.data());
  const DesignMatrix c = sample_sphere_matrix(8, 100, Seed{8});
  CHECK(a.data() != c.data());
}

TEST_CASE("p0 = 0 yields an empty normalized matrix") {
  const DesignMatrix x = sample_sphere_matrix(5, 0, Seed{1});
  CHECK(x.rows() == 5);
  CHECK(x.cols() == 0);
  CHECK(x.is_normalized());
}

TEST_CASE("derived substreams differ") {
  const Seed master{42};
  CHECK(derive_seed(master, 0).value != derive_seed(master, 1).value);
  CHECK(derive_seed(master, 1).value != derive_seed(master, 2).value);
  // same derivation twice is stable
  CHECK(derive_seed(master, 3).value == derive_seed(master, 3).value);
}

TEST_CASE("pair moment matches the sphere law") {
  // E[<u, u'>^2] = 1/n for independent uniform sphere vectors. Disjoint
  // column pairs of one sampled matrix are independent samples.
  const int n = 8;
  const int p0 = 2000;
  const DesignMatrix x = sample_sphere_matrix(n, p0, Seed{2024});
  std::vector<double> squares;
  for (int k = 0; k + 1 < p0; k += 2) {
    const double dot = x.column(k).dot(x.column(k + 1));
    squares.push_back(dot * dot);
  }
  double mean = 0.0;
  for (double v : squares) mean += v;
  mean /= static_cast<double>(squares.size());
  double var = 0.0;
  for (double v : squares) var += (v - mean) * (v - mean);
  var /= static_cast<double>(squares.size() - 1);
  const double se = std::sqrt(var / static_cast<double>(squares.size()));

  CHECK(std::abs(mean - 1.0 / n) <= 3.0 * se);

  // Independent Monte-Carlo oracle: raw normals normalized by hand.
  Rng rng(Seed{77});
  double oracle_mean = 0.0;
  const int oracle_samples = 100000;
  for (int k = 0; k < oracle_samples; ++k) {
    const Eigen::VectorXd u = oracles::raw_unit_vector(n, rng);
    const Eigen::VectorXd w = oracles::raw_unit_vector(n, rng);
    const double dot = u.dot(w);
    oracle_mean += dot * dot;
  }
  oracle_mean /= oracle_samples;
  CHECK(std::abs(mean - oracle_mean) <= 4.0 * se);
}

TEST_CASE("dot_cdf endpoints and range checks") {
  const DotLaw law(5);
  CHECK(dot_cdf(law, 0.0) == 0.0);
  CHECK(dot_cdf(law, 1.0) == 1.0);
  CHECK_THROWS_AS(dot_cdf(law, -0.1), OutOfRangeError);
  CHECK_THROWS_AS(dot_cdf(law, 1.1), OutOfRangeError);
  CHECK_THROWS_AS(DotLaw(1), OutOfRangeError);
}

TEST_CASE("dot_cdf is the identity for n = 3") {
  const DotLaw law(3);
  for (double z : {0.1, 0.5, 0.9}) {
    CHECK(dot_cdf(law, z) == doctest::Approx(z).epsilon(1e-12));
    CHECK(dot_cdf(law, z) ==
          doctest::Approx(oracles::dot_cdf_quadrature(3, z)).epsilon(1e-7));
  }
}

TEST_CASE("dot_cdf matches quadrature for several dimensions") {
  for (int n : {2, 4, 8, 32}) {
    const DotLaw law(n);
    for (double z : {0.05, 0.3, 0.7, 0.95}) {
      CHECK(dot_cdf(law, z) ==
            doctest::Approx(oracles::dot_cdf_quadrature(n, z))
                .epsilon(1e-6));
    }
  }
  // n = 2 also has the arcsine closed form.
  const DotLaw arc(2);
  for (double z : {0.2, 0.6, 0.9}) {
    CHECK(dot_cdf(arc, z) ==
          doctest::Approx(2.0 / M_PI * std::asin(z)).epsilon(1e-12));
  }
}

TEST_CASE("dot_cdf is nondecreasing on a fine grid") {
  for (int n : {2, 3, 8, 32}) {
    const DotLaw law(n);
    double previous = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double value = dot_cdf(law, k / 1000.0);
      CHECK(value >= previous - 1e-15);
      previous = value;
    }
  }
}

TEST_CASE("empirical dot law matches the model CDF") {
  const int n = 8;
  const int samples = 10000;
  Rng direction_rng(Seed{3});
  const Eigen::VectorXd v = sample_unit_vector(n, direction_rng);
  const DesignMatrix x = sample_sphere_matrix(n, samples, Seed{4});
  std::vector<double> dots;
  for (int j = 0; j < samples; ++j) {
    dots.push_back(std::abs(x.column(j).dot(v)));
  }
  const DotLaw law(n);
  const double distance =
      ks_distance(dots, [&](double z) { return dot_cdf(law, z); });
  CHECK(distance <= 1.63 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("rotation invariance of the dot law") {
  const int n = 6;
  const int samples = 10000;
  Rng rng(Seed{5});
  const Eigen::MatrixXd rotation = oracles::random_orthonormal(n, rng);
  const Eigen::VectorXd v = oracles::raw_unit_vector(n, rng);
  const DesignMatrix x = sample_sphere_matrix(n, samples, Seed{6});
  std::vector<double> plain, rotated;
  for (int j = 0; j < samples; ++j) {
    plain.push_back(std::abs(x.column(j).dot(v)));
    rotated.push_back(std::abs((rotation * x.column(j)).dot(v)));
  }
  const double distance = oracles::two_sample_ks(plain, rotated);
  const double critical =
      1.63 * std::sqrt(2.0 / static_cast<double>(samples));
  CHECK(distance <= critical);
}
