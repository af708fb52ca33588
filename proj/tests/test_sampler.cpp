#include <doctest.h>

#include <sstream>

#include "kahler/error.hpp"
#include "kahler/parallel.hpp"
#include "kahler/sampler.hpp"
#include "oracles.hpp"

using namespace kahler;

TEST_CASE("streams are deterministic and substreams differ") {
  const SeededStream s{42, 3};
  Rng a = s.chunk_rng(0), b = s.chunk_rng(0), c = s.chunk_rng(1);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  Rng d = s.substream(0).chunk_rng(0);
  CHECK(x != d());
  CHECK(s.substream(1).stream_index != s.substream(0).stream_index);
}

TEST_CASE("merge agrees with summarizing the concatenation") {
  std::vector<double> a{1.0, 2.5, -0.3, 4.0}, b{0.1, 0.2, 7.0};
  std::vector<double> ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const MCEstimate m = merge(summarize(a, 1), summarize(b, 1));
  const MCEstimate s = summarize(ab, 1);
  CHECK(m.value == doctest::Approx(s.value).epsilon(1e-14));
  CHECK(m.std_error == doctest::Approx(s.std_error).epsilon(1e-12));
  CHECK(m.n_samples == 7);
}

TEST_CASE("summarize: mean and standard error of the mean") {
  const MCEstimate e = summarize({1.0, 2.0, 3.0, 4.0}, 0);
  CHECK(e.value == doctest::Approx(2.5));
  // sample variance 5/3, stderr sqrt(5/12)
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
}

TEST_CASE("estimate validates its inputs") {
  const PointSampler pn = [](Rng& r) { return sample_pn(r, 2); };
  CHECK_THROWS_AS(estimate([](const Vec&) { return 1.0; }, pn, 1, {1, 1}), ContractError);
  CHECK_THROWS_AS(estimate([](const Vec&) { return std::nan(""); }, pn, 10, {1, 1}),
                  NumericalError);
}

TEST_CASE("estimates do not depend on the thread count") {
  const PointSampler pn = [](Rng& r) { return sample_pn(r, 3); };
  const auto g = [](const Vec& z) { return std::norm(z(0)) / z.squaredNorm(); };
  set_thread_count(1);
  const MCEstimate one = estimate(g, pn, 5000, {9, 2});
  set_thread_count(4);
  const MCEstimate four = estimate(g, pn, 5000, {9, 2});
  set_thread_count(0);
  CHECK(one.value == four.value);
  CHECK(one.std_error == four.std_error);
}

TEST_CASE("P^N moment: E[|z_0|^2/|z|^2] = 1/(N+1) and E[log |z_0|^2/|z|^2] = -H_N") {
  for (int n = 1; n <= 3; ++n) {
    const PointSampler pn = [n](Rng& r) { return sample_pn(r, n); };
    const MCEstimate m =
        estimate([](const Vec& z) { return std::norm(z(0)) / z.squaredNorm(); }, pn, 20000,
                 {1, static_cast<std::uint64_t>(n)});
    CHECK(std::abs(m.value - 1.0 / (n + 1)) < 4 * m.std_error);
    const MCEstimate l = estimate(
        [](const Vec& z) { return std::log(std::norm(z(0)) / z.squaredNorm()); }, pn, 20000,
        {2, static_cast<std::uint64_t>(n)});
    CHECK(std::abs(l.value + oracle::harmonic(n)) < 4 * l.std_error);
  }
}

TEST_CASE("random matrices have the advertised structure") {
  Rng rng(12);
  const Mat w = sample_grassmannian(rng, 2, 3);
  CHECK((w * w.adjoint() - Mat::Identity(2, 2)).norm() < 1e-12);
  const Mat u = sample_unitary(rng, 4);
  CHECK((u * u.adjoint() - Mat::Identity(4, 4)).norm() < 1e-12);
  const Mat h = sample_traceless_hermitian(rng, 3);
  CHECK((h - h.adjoint()).norm() < 1e-14);
  CHECK(std::abs(h.trace()) < 1e-14);
  CHECK(h.norm() == doctest::Approx(1.0));
}

TEST_CASE("companion-matrix roots") {
  // (s - 1)(s - 2i)(s + 3) = s^3 + (2 - 2i) s^2 + (-3 - 4i) s + 6i
  const std::vector<cplx> c{cplx(0, 6), cplx(-3, -4), cplx(2, -2), 1.0};
  auto roots = polynomial_roots(c);
  REQUIRE(roots.size() == 3);
  for (cplx expected : {cplx(1, 0), cplx(0, 2), cplx(-3, 0)}) {
    double best = 1e9;
    for (cplx r : roots) best = std::min(best, std::abs(r - expected));
    CHECK(best < 1e-10);
  }
  CHECK_THROWS_AS(polynomial_roots({1.0, 0.0}), NumericalError);
}

TEST_CASE("line roots lie on the hypersurface") {
  const auto f = HomogeneousPolynomial::fermat(3, 3);
  Rng rng(14);
  for (int k = 0; k < 50; ++k) {
    const auto pts = sample_line_roots(rng, f);
    REQUIRE(pts.size() == 3);
    for (const Vec& p : pts) {
      CHECK(p.norm() == doctest::Approx(1.0));
      CHECK(f.relative_value(p) < 1e-10);
    }
  }
}

TEST_CASE("hypersurface batch layout and count mass") {
  const auto f = HomogeneousPolynomial::fermat(3, 2);
  const auto b = sample_hypersurface({3, 1}, f, 3000);
  CHECK(b.size() == 6000);
  CHECK(b.n_groups() == 3000);
  CHECK(b.mass == 2.0);
  const MCEstimate mass = batch_mass(b);
  CHECK(mass.value == doctest::Approx(2.0).epsilon(1e-12));
  // a symmetric integrand: E[|z_0|^2/|z|^2] over the Fermat conic is 1/3
  const MCEstimate m =
      batch_mean(b, [&](std::size_t i) { return std::norm(b.points[i](0)); });
  CHECK(std::abs(m.value - 1.0 / 3.0) < 4 * m.std_error);
  std::ostringstream os;
  b.dump(os);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 6000);
}

TEST_CASE("identity reports") {
  const auto r = make_identity_report("x", {1.0, 0.1, 10, 1}, {1.2, 0.1, 10, 2});
  CHECK(r.gap == doctest::Approx(0.2));
  CHECK(r.tolerance == doctest::Approx(3 * std::sqrt(0.02)).epsilon(1e-9));
  CHECK(r.pass);
}
