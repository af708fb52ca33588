#include <doctest.h>

#include <numbers>

#include "kahler/bundles.hpp"
#include "kahler/error.hpp"
#include "kahler/registry.hpp"
#include "oracles.hpp"

using namespace kahler;

namespace {

GroupElement diag_sigma(int n, double t) {
  return exp_path(GeodesicDirection::diagonal_pair(n), t, GroupElement::identity(n));
}

}  // namespace

TEST_CASE("registry constants") {
  CHECK(o_minus_one_p1().c == doctest::Approx(2 * std::numbers::pi));
  CHECK(registry_bundle("taut_gr_1_2").c == doctest::Approx(2 * std::numbers::pi));
  // Gr(2,4): dim 4, rank 2, degree 2
  CHECK(registry_bundle("taut_gr_2_4").c == doctest::Approx(8 * std::numbers::pi));
  CHECK_THROWS_AS(registry_bundle("nope"), ConfigError);
}

TEST_CASE("O(-1) on P^1: L against the closed form") {
  // L = c int_0^1 log(a u + b (1 - u)) du = c [(a log a - b log b)/(a - b) - 1]
  const BundleBatch batch(o_minus_one_p1(), {1, 1}, 40000);
  for (double t : {0.2, 0.6}) {
    const double a = std::exp(2 * t), b = std::exp(-2 * t);
    const double expected =
        2 * std::numbers::pi * ((a * std::log(a) - b * std::log(b)) / (a - b) - 1.0);
    const MCEstimate l = donaldson_L(batch, diag_sigma(2, t));
    CHECK(std::abs(l.value - expected) < 4.0 * l.std_error);
  }
  CHECK(donaldson_L(batch, GroupElement::identity(2)).value == 0.0);
}

TEST_CASE("L derivatives agree with common-random-number differences") {
  for (const auto& name : bundle_names()) {
    const BundleChart chart = registry_bundle(name);
    const int n = chart.n_sections;
    const BundleBatch batch(chart, {2, 1}, 2000);
    Rng rng(3);
    const GeodesicDirection c(sample_traceless_hermitian(rng, n));
    const GroupElement s0 = exp_path(GeodesicDirection(sample_traceless_hermitian(rng, n)), 0.5,
                                     GroupElement::identity(n));
    const double h = 1e-4;
    const auto l = [&](double t) { return donaldson_L(batch, exp_path(c, t, s0)).value; };
    const auto dl = [&](double t) { return L_derivative(batch, exp_path(c, t, s0), c).value; };
    INFO(name);
    CHECK(dl(0.0) == doctest::Approx((l(h) - l(-h)) / (2 * h)).epsilon(1e-6));
    CHECK(L_second_derivative(batch, s0, c).value ==
          doctest::Approx((dl(h) - dl(-h)) / (2 * h)).epsilon(1e-6));
    CHECK(L_second_derivative(batch, s0, c).value >= 0.0);
  }
}

TEST_CASE("Gieseker points reproduce the Pluecker data") {
  for (const auto& name : bundle_names()) {
    const BundleChart chart = registry_bundle(name);
    REQUIRE(chart.gieseker.has_value());
    CHECK(gieseker_consistency(chart, {4, 1}, 50) < 1e-10);
    const GiesekerPoint same = act(chart.gieseker->point, GroupElement::identity(chart.n_sections),
                                   chart.rank);
    CHECK((same.tensor - chart.gieseker->point.tensor).norm() < 1e-14);
  }
}

// gieseker_norm is the bare log-norm ratio; L carries the constant c
TEST_CASE("Gieseker log-norm equals L sample by sample") {
  for (const auto& name : bundle_names()) {
    const BundleChart chart = registry_bundle(name);
    const GroupElement s = diag_sigma(chart.n_sections, 0.4);
    const BundleBatch batch(chart, {5, 1}, 300);
    const MCEstimate l = donaldson_L(batch, s);
    const MCEstimate g = gieseker_norm(chart.gieseker->point, chart, s, {5, 1}, 300);
    INFO(name);
    CHECK(l.value == doctest::Approx(chart.c * g.value).epsilon(1e-10));
  }
}

TEST_CASE("theorem 2 with independent seeds") {
  for (const auto& name : bundle_names()) {
    const BundleChart chart = registry_bundle(name);
    const IdentityReport r =
        theorem2_check(chart, diag_sigma(chart.n_sections, 0.3), {6, 1}, {7, 1}, 5000);
    INFO(name);
    CHECK(r.pass);
  }
}

TEST_CASE("bundle balancing converges and is critical") {
  for (const auto& name : bundle_names()) {
    const BundleChart chart = registry_bundle(name);
    const int n = chart.n_sections;
    const BundleBatch batch(chart, {8, 1}, 2000);
    const auto trace = bundle_balance_iterate(batch, diag_sigma(n, 0.3), 200, 1e-11);
    INFO(name);
    REQUIRE(trace.back().converged);
    CHECK(std::abs(L_derivative(batch, trace.back().sigma, named_direction("random:4", n)).value) <
          1e-8);
  }
}

TEST_CASE("bundle batches validate their input") {
  CHECK_THROWS_AS(BundleBatch(o_minus_one_p1(), {1, 1}, 1), ContractError);
  const BundleBatch batch(o_minus_one_p1(), {1, 1}, 10);
  CHECK_THROWS_AS(donaldson_L(batch, GroupElement::identity(3)), ContractError);
}
