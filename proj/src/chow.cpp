#include "kahler/chow.hpp"

#include <cmath>

#include "kahler/error.hpp"
#include "kahler/hypergeo.hpp"

namespace kahler {

namespace {

void require_sizes(const HomogeneousPolynomial& f, const GroupElement& sigma) {
  if (sigma.size() != f.n_vars()) {
    throw ContractError("group element size does not match the polynomial");
  }
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

PointSampler pn_sampler(int n_dim) {
  return [n_dim](Rng& rng) { return sample_pn(rng, n_dim); };
}

}  // namespace

NormReport chow_norm(const HomogeneousPolynomial& f, const GroupElement& sigma,
                     const SeededStream& stream, long n) {
  require_sizes(f, sigma);
  const HomogeneousPolynomial fs = f.compose(sigma.inverse().matrix());
  const double d = f.degree();
  const MCEstimate e = estimate(
      [&](const Vec& z) { return std::log(std::norm(fs(z))) - d * std::log(z.squaredNorm()); },
      pn_sampler(f.n_vars() - 1), n, stream);
  return {e, "chow", 1.0, f.n_vars() - 2, f.degree()};
}

MCEstimate chow_log_ratio(const HomogeneousPolynomial& f, const GroupElement& sigma,
                          const SeededStream& stream, long n) {
  require_sizes(f, sigma);
  const HomogeneousPolynomial fs = f.compose(sigma.inverse().matrix());
  return estimate([&](const Vec& z) { return std::log(std::norm(fs(z)) / std::norm(f(z))); },
                  pn_sampler(f.n_vars() - 1), n, stream);
}

namespace {

struct SharpWeights {
  double c1, c2;
};

SharpWeights sharp_weights(const HomogeneousPolynomial& f) {
  const int d = f.degree();
  if (d < 2) {
    throw DegenerateWeightError("# seminorm needs degree d >= 2 (weights divide by d - 1)");
  }
  const double m = f.n_vars() - 2;
  const double denom = (m + 2.0) * (d - 1.0);
  return {(m + 1.0) / denom, (d - m - 2.0) / denom};
}

// Per-point r_0 and log xi_sigma at a sampled point of Z, from the direct
// Gram-determinant definition.
MCEstimate xi_term(const HomogeneousPolynomial& f, const GroupElement& sigma,
                   const WeightedSampleBatch& z, bool relative_to_identity) {
  const GroupElement id = GroupElement::identity(f.n_vars());
  return batch_mean(z, [&](std::size_t i) {
    const TangentFrame frame = tangent_frame(f, ProjectivePoint(z.points[i]));
    const double r0 = frame_gram(sigma.matrix(), frame.base.coords(), frame.vectors)
                          .determinant()
                          .real();
    double v = r0 * std::log(xi(f, frame, sigma));
    if (relative_to_identity) v -= std::log(xi(f, frame, id));
    return v;
  });
}

}  // namespace

NormReport sharp_seminorm(const HomogeneousPolynomial& f, const GroupElement& sigma,
                          const SeededStream& stream, long n_lines, long n_ambient) {
  require_sizes(f, sigma);
  const SharpWeights w = sharp_weights(f);
  const double v = f.degree();
  const WeightedSampleBatch z = sample_hypersurface(stream.substream(0), f, n_lines);
  const MCEstimate first = xi_term(f, sigma, z, false);
  const MCEstimate second = chow_norm(f, sigma, stream.substream(1), n_ambient).log_norm_sq;
  MCEstimate out;
  out.value = w.c1 * v * first.value + w.c2 * second.value;
  out.std_error = combined(w.c1 * v * first.std_error, w.c2 * second.std_error);
  out.n_samples = first.n_samples + second.n_samples;
  out.seed = stream.seed;
  return {out, "sharp", 1.0, f.n_vars() - 2, f.degree()};
}

IdentityReport theorem5_check(const HomogeneousPolynomial& f, const GroupElement& sigma,
                              const SeededStream& lhs_stream, long n_lines,
                              const SeededStream& rhs_stream, long n_ambient) {
  require_sizes(f, sigma);
  const FrozenBatch batch(Variety::hypersurface(f), lhs_stream, n_lines);
  const EnergyReport f0 = f0_energy(batch, sigma);
  const double scale = -f0.norm.V * (f0.norm.m + 1.0);
  MCEstimate lhs = f0.value;
  lhs.value *= scale;
  lhs.std_error *= std::abs(scale);
  const MCEstimate rhs = chow_log_ratio(f, sigma, rhs_stream, n_ambient);
  return make_identity_report("theorem5", lhs, rhs);
}

IdentityReport theorem6_check(const HomogeneousPolynomial& f, const GroupElement& sigma,
                              const SeededStream& lhs_stream, long n_lines,
                              const SeededStream& rhs_stream, long n_rhs_lines,
                              long n_ambient) {
  require_sizes(f, sigma);
  const SharpWeights w = sharp_weights(f);
  const FrozenBatch batch(Variety::hypersurface(f), lhs_stream, n_lines);
  const MCEstimate lhs = mabuchi_energy(batch, sigma).value;

  const double m = f.n_vars() - 2;
  const double d = f.degree();
  const double v = d;
  const double k = (m + 2.0) * (d - 1.0) / (v * (m + 1.0));  // D = 1
  const WeightedSampleBatch z = sample_hypersurface(rhs_stream.substream(0), f, n_rhs_lines);
  const MCEstimate first = xi_term(f, sigma, z, true);
  MCEstimate rhs;
  rhs.value = k * w.c1 * v * first.value;
  rhs.std_error = k * w.c1 * v * first.std_error;
  rhs.n_samples = first.n_samples;
  if (w.c2 != 0.0) {
    const MCEstimate second = chow_log_ratio(f, sigma, rhs_stream.substream(1), n_ambient);
    rhs.value += k * w.c2 * second.value;
    rhs.std_error = combined(rhs.std_error, k * std::abs(w.c2) * second.std_error);
    rhs.n_samples += second.n_samples;
  }
  rhs.seed = rhs_stream.seed;
  return make_identity_report("theorem6", lhs, rhs);
}

MCEstimate grassmannian_balance_test(int n_dim, int k, const Mat& c,
                                     const SeededStream& stream, long n) {
  if (c.rows() != n_dim + 1 || c.cols() != n_dim + 1) {
    throw ContractError("grassmannian_balance_test: matrix size must be N+1");
  }
  if (std::abs(c.trace()) > kStructureTol * std::max(1.0, c.norm())) {
    throw ContractError("grassmannian_balance_test: c must be traceless");
  }
  const Mat u = c + c.adjoint();
  return estimate(
      [&](const Vec& flat) {
        const Mat z = Eigen::Map<const Mat>(flat.data(), n_dim + 1, k);
        return (z.adjoint() * u * z).trace().real();
      },
      [n_dim, k](Rng& rng) {
        const Mat z = sample_grassmannian(rng, k, n_dim).transpose();
        return Vec(Eigen::Map<const Vec>(z.data(), z.size()));
      },
      n, stream);
}

}  // namespace kahler
