#include <doctest.h>

#include "kahler/error.hpp"
#include "kahler/sampler.hpp"
#include "kahler/wedge.hpp"
#include "oracles.hpp"

using namespace kahler;

namespace {

Mat random_pd(Rng& rng, int m) {
  Mat a(m, m);
  for (int i = 0; i < m; ++i) a.col(i) = gaussian_vector(rng, m);
  return a * a.adjoint() + 0.1 * Mat::Identity(m, m);
}

Mat random_hermitian(Rng& rng, int m) {
  Mat a(m, m);
  for (int i = 0; i < m; ++i) a.col(i) = gaussian_vector(rng, m);
  return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("mixed discriminant: inclusion-exclusion against column mixing") {
  Rng rng(1);
  for (int m = 1; m <= 4; ++m) {
    std::vector<Mat> mats;
    for (int k = 0; k < m; ++k) mats.push_back(random_hermitian(rng, m));
    CHECK(std::abs(mixed_discriminant(mats) - oracle::mixed_discriminant(mats)) <
          1e-10 * (1 + std::abs(oracle::mixed_discriminant(mats))));
    // D(A,...,A) = det A
    std::vector<Mat> same(m, mats[0]);
    CHECK(std::abs(mixed_discriminant(same) - mats[0].determinant()) < 1e-10);
  }
}

TEST_CASE("mixed discriminant is symmetric and multilinear") {
  Rng rng(2);
  const Mat a = random_hermitian(rng, 3), b = random_hermitian(rng, 3),
            c = random_hermitian(rng, 3), e = random_hermitian(rng, 3);
  const cplx abc = mixed_discriminant({a, b, c});
  CHECK(std::abs(abc - mixed_discriminant({c, a, b})) < 1e-10);
  CHECK(std::abs(mixed_discriminant({a + 2.0 * e, b, c}) -
                 (abc + 2.0 * mixed_discriminant({e, b, c}))) < 1e-9);
}

TEST_CASE("wedge ratios match mixed discriminants") {
  Rng rng(3);
  for (int m = 1; m <= 3; ++m) {
    const Mat g = random_pd(rng, m), gs = random_pd(rng, m);
    const auto r = mixed_wedge_ratios(g, gs);
    REQUIRE(static_cast<int>(r.size()) == m + 1);
    for (int k = 0; k <= m; ++k) {
      std::vector<Mat> mats(k, g);
      for (int j = k; j < m; ++j) mats.push_back(gs);
      const double expected = oracle::mixed_discriminant(mats).real() / g.determinant().real();
      CHECK(r[k] == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(r[m] == doctest::Approx(1.0));
  }
}

TEST_CASE("linear wedge ratios match mixed discriminants") {
  Rng rng(4);
  const int m = 3;
  const Mat g = random_pd(rng, m), gs = random_pd(rng, m), h = random_hermitian(rng, m);
  const WedgePair pair(g, gs);
  std::vector<double> weights{0.3, -1.0, 2.0};
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    // D(H, G^i, G_sigma^{m-1-i}) / det G
    std::vector<Mat> mats{h};
    for (int j = 0; j < i; ++j) mats.push_back(g);
    for (int j = i; j < m - 1; ++j) mats.push_back(gs);
    const double expected = oracle::mixed_discriminant(mats).real() / g.determinant().real();
    CHECK(pair.linear_ratio(h, i) == doctest::Approx(expected).epsilon(1e-9));
    sum += weights[i] * expected;
  }
  CHECK(pair.linear_ratio_sum(h, weights) == doctest::Approx(sum).epsilon(1e-9));
}

TEST_CASE("elementary symmetric polynomials") {
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  const auto e = elementary_symmetric(x);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == 1.0);
  CHECK(e[1] == 6.0);
  CHECK(e[2] == 11.0);
  CHECK(e[3] == 6.0);
}

TEST_CASE("non-positive metrics are rejected") {
  CHECK_THROWS_AS(WedgePair(Mat::Identity(2, 2), -Mat::Identity(2, 2)), ContractError);
}
