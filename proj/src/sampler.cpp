#include "kahler/sampler.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kahler/error.hpp"
#include "kahler/parallel.hpp"

namespace kahler {

Rng SeededStream::chunk_rng(std::uint64_t chunk) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_index),
                    static_cast<std::uint32_t>(stream_index >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

SeededStream SeededStream::substream(std::uint64_t index) const {
  // mix so that substreams of different parents do not collide
  return {seed, stream_index * 0x9E3779B97F4A7C15ull + index + 1};
}

MCEstimate merge(const MCEstimate& a, const MCEstimate& b) {
  if (a.n_samples == 0) return b;
  if (b.n_samples == 0) return a;
  const double na = static_cast<double>(a.n_samples);
  const double nb = static_cast<double>(b.n_samples);
  const double n = na + nb;
  // recover the sums of squared deviations from the standard errors
  const double m2a = a.std_error * a.std_error * na * (na - 1.0);
  const double m2b = b.std_error * b.std_error * nb * (nb - 1.0);
  const double delta = b.value - a.value;
  const double mean = a.value + delta * nb / n;
  const double m2 = m2a + m2b + delta * delta * na * nb / n;
  MCEstimate out;
  out.value = mean;
  out.std_error = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
  out.n_samples = a.n_samples + b.n_samples;
  out.seed = a.seed;
  return out;
}

MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
  MCEstimate out;
  out.seed = seed;
  out.n_samples = static_cast<long>(values.size());
  if (values.empty()) return out;
  // Welford
  double mean = 0.0, m2 = 0.0;
  long k = 0;
  for (double v : values) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  out.value = mean;
  if (k > 1) {
    out.std_error = std::sqrt(m2 / static_cast<double>(k - 1) / static_cast<double>(k));
  }
  return out;
}

double MatrixEstimate::max_error() const { return std_error.maxCoeff(); }

Vec gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

Vec sample_pn(Rng& rng, int n_dim) {
  if (n_dim < 1) throw ContractError("sample_pn: N must be at least 1");
  Vec v = gaussian_vector(rng, n_dim + 1);
  return v / v.norm();
}

ProjectivePoint sample_pn_point(Rng& rng, int n_dim) {
  return ProjectivePoint(sample_pn(rng, n_dim));
}

Mat sample_grassmannian(Rng& rng, int k, int n_dim) {
  if (k < 1 || k > n_dim) {
    throw ContractError("sample_grassmannian: need 1 <= k <= N");
  }
  Mat g(n_dim + 1, k);
  for (int j = 0; j < k; ++j) g.col(j) = gaussian_vector(rng, n_dim + 1);
  Eigen::HouseholderQR<Mat> qr(g);
  const Mat q = qr.householderQ() * Mat::Identity(n_dim + 1, k);
  return q.transpose();
}

Mat sample_unitary(Rng& rng, int n) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(rng, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases of R's diagonal so that Q is Haar distributed
  for (int j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Mat sample_traceless_hermitian(Rng& rng, int n) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(rng, n);
  Mat h = (g + g.adjoint()) * 0.5;
  h -= Mat::Identity(n, n) * (h.trace() / static_cast<double>(n));
  return h / h.norm();
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) return {};
  const cplx lead = coeffs[d];
  if (lead == cplx(0.0)) throw NumericalError("polynomial_roots: zero leading coefficient");
  if (d == 1) return {-coeffs[0] / lead};
  Mat comp = Mat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[i] / lead;
  Eigen::ComplexEigenSolver<Mat> eig(comp, false);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("polynomial_roots: companion eigenvalue solver failed");
  }
  std::vector<cplx> roots(d);
  for (int i = 0; i < d; ++i) roots[i] = eig.eigenvalues()(i);
  return roots;
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx s, cplx& deriv) {
  cplx v = 0.0;
  deriv = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    deriv = deriv * s + v;
    v = v * s + c[k];
  }
  return v;
}

std::string describe_line(const Vec& p, const Vec& q) {
  return "line through " + describe(ProjectivePoint(p)) + " and " + describe(ProjectivePoint(q));
}

}  // namespace

std::vector<Vec> sample_line_roots(Rng& rng, const HomogeneousPolynomial& f) {
  const int n_dim = f.n_vars() - 1;
  const int d = f.degree();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Mat w = sample_grassmannian(rng, 2, n_dim);
    const Vec p = w.row(0).transpose();
    const Vec q = w.row(1).transpose();
    const std::vector<cplx> c = f.restrict_to_line(p, q);
    double cnorm = 0.0;
    for (const auto& ck : c) cnorm += std::norm(ck);
    cnorm = std::sqrt(cnorm);
    if (cnorm == 0.0) {
      throw SingularityError("sample_hypersurface: f vanishes identically on a " +
                             describe_line(p, q));
    }
    if (std::abs(c[d]) < 1e-12 * cnorm) continue;
    std::vector<cplx> roots = polynomial_roots(c);
    std::vector<Vec> out;
    out.reserve(d);
    for (cplx s : roots) {
      for (int it = 0; it < 2; ++it) {
        cplx dv;
        const cplx v = horner(c, s, dv);
        if (dv == cplx(0.0)) break;
        s -= v / dv;
      }
      Vec z = p + s * q;
      z /= z.norm();
      if (!(f.relative_value(z) <= 1e-8)) {
        throw ConvergenceError("sample_hypersurface: root not on X for " +
                               describe_line(p, q));
      }
      const double g = f.gradient(z).norm() / f.coefficient_norm();
      if (!(g >= 1e-10)) {
        throw SingularityError("sample_hypersurface: near-singular point " +
                               describe(ProjectivePoint(z)));
      }
      out.push_back(std::move(z));
    }
    return out;
  }
  throw ConvergenceError("sample_hypersurface: could not draw a line in general position");
}

void WeightedSampleBatch::dump(std::ostream& os) const {
  os.precision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (Eigen::Index j = 0; j < points[i].size(); ++j) {
      os << points[i](j).real() << ' ' << points[i](j).imag() << ' ';
    }
    os << weights[i] << '\n';
  }
}

namespace {

std::size_t n_chunks(long n) {
  return static_cast<std::size_t>((n + static_cast<long>(kChunkSize) - 1) /
                                  static_cast<long>(kChunkSize));
}

std::size_t chunk_length(long n, std::size_t chunk) {
  const long start = static_cast<long>(chunk * kChunkSize);
  return static_cast<std::size_t>(std::min<long>(kChunkSize, n - start));
}

}  // namespace

WeightedSampleBatch sample_pn_batch(const SeededStream& stream, int n_dim, long n) {
  if (n < 1) throw ContractError("sample_pn_batch: need at least one sample");
  WeightedSampleBatch batch;
  batch.points.resize(static_cast<std::size_t>(n));
  parallel_for(n_chunks(n), [&](std::size_t c) {
    Rng rng = stream.chunk_rng(c);
    for (std::size_t i = 0; i < chunk_length(n, c); ++i) {
      batch.points[c * kChunkSize + i] = sample_pn(rng, n_dim);
    }
  });
  batch.weights.assign(batch.points.size(), 1.0 / static_cast<double>(n));
  batch.group_offsets.resize(batch.points.size() + 1);
  for (std::size_t i = 0; i <= batch.points.size(); ++i) batch.group_offsets[i] = i;
  batch.mass = 1.0;
  batch.seed = stream.seed;
  return batch;
}

WeightedSampleBatch sample_hypersurface(const SeededStream& stream,
                                        const HomogeneousPolynomial& f, long n_lines) {
  if (n_lines < 1) throw ContractError("sample_hypersurface: need at least one line");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  const double v = static_cast<double>(f.degree());
  WeightedSampleBatch batch;
  batch.points.resize(static_cast<std::size_t>(n_lines) * d);
  parallel_for(n_chunks(n_lines), [&](std::size_t c) {
    Rng rng = stream.chunk_rng(c);
    for (std::size_t i = 0; i < chunk_length(n_lines, c); ++i) {
      std::vector<Vec> roots = sample_line_roots(rng, f);
      const std::size_t line = c * kChunkSize + i;
      for (std::size_t k = 0; k < d; ++k) batch.points[line * d + k] = std::move(roots[k]);
    }
  });
  batch.weights.assign(batch.points.size(),
                       v / (static_cast<double>(d) * static_cast<double>(n_lines)));
  batch.group_offsets.resize(static_cast<std::size_t>(n_lines) + 1);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n_lines); ++k) {
    batch.group_offsets[k] = k * d;
  }
  batch.mass = v;
  batch.seed = stream.seed;
  return batch;
}

namespace {

void check_finite(double value, const WeightedSampleBatch& batch, std::size_t i) {
  if (!std::isfinite(value)) {
    throw NumericalError("integrand is not finite at " +
                         describe(ProjectivePoint(batch.points[i])));
  }
}

}  // namespace

MCEstimate batch_mean(const WeightedSampleBatch& batch,
                      const std::function<double(std::size_t)>& g) {
  std::vector<double> values(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    values[i] = g(i);
    check_finite(values[i], batch, i);
  });
  const std::size_t groups = batch.n_groups();
  const double scale = static_cast<double>(groups) / batch.mass;
  std::vector<double> totals(groups);
  for (std::size_t k = 0; k < groups; ++k) {
    double t = 0.0;
    for (std::size_t i = batch.group_offsets[k]; i < batch.group_offsets[k + 1]; ++i) {
      t += batch.weights[i] * values[i];
    }
    totals[k] = scale * t;
  }
  return summarize(totals, batch.seed);
}

MatrixEstimate batch_matrix_mean(const WeightedSampleBatch& batch,
                                 const std::function<Mat(std::size_t)>& g) {
  std::vector<Mat> values(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    values[i] = g(i);
    if (!values[i].allFinite()) check_finite(NAN, batch, i);
  });
  const std::size_t groups = batch.n_groups();
  const double scale = static_cast<double>(groups) / batch.mass;
  const Eigen::Index r = values.empty() ? 0 : values[0].rows();
  const Eigen::Index c = values.empty() ? 0 : values[0].cols();
  Mat mean = Mat::Zero(r, c);
  Eigen::MatrixXd m2_re = Eigen::MatrixXd::Zero(r, c);
  Eigen::MatrixXd m2_im = Eigen::MatrixXd::Zero(r, c);
  long k = 0;
  for (std::size_t grp = 0; grp < groups; ++grp) {
    Mat t = Mat::Zero(r, c);
    for (std::size_t i = batch.group_offsets[grp]; i < batch.group_offsets[grp + 1]; ++i) {
      t += batch.weights[i] * values[i];
    }
    t *= scale;
    ++k;
    const Mat delta = t - mean;
    mean += delta / static_cast<double>(k);
    const Mat delta2 = t - mean;
    m2_re.array() += delta.real().array() * delta2.real().array();
    m2_im.array() += delta.imag().array() * delta2.imag().array();
  }
  MatrixEstimate out;
  out.value = mean;
  out.n_samples = k;
  out.seed = batch.seed;
  if (k > 1) {
    const double denom = static_cast<double>(k - 1) * static_cast<double>(k);
    out.std_error = ((m2_re + m2_im) / denom).cwiseSqrt();
  } else {
    out.std_error = Eigen::MatrixXd::Zero(r, c);
  }
  return out;
}

MCEstimate batch_mass(const WeightedSampleBatch& batch) {
  return batch_mean(batch, [&](std::size_t) { return batch.mass; });
}

IdentityReport make_identity_report(const std::string& name, const MCEstimate& lhs,
                                    const MCEstimate& rhs) {
  IdentityReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = std::abs(lhs.value - rhs.value);
  // a rounding floor so that exact agreement (e.g. sigma = I) passes
  r.tolerance = 3.0 * std::hypot(lhs.std_error, rhs.std_error) +
                1e-12 * (1.0 + std::abs(lhs.value) + std::abs(rhs.value));
  r.pass = r.gap <= r.tolerance;
  return r;
}

MCEstimate estimate(const std::function<double(const Vec&)>& g,
                    const PointSampler& sampler, long n, const SeededStream& stream) {
  if (n < 2) throw ContractError("estimate: need at least two samples");
  std::vector<double> values(static_cast<std::size_t>(n));
  parallel_for(n_chunks(n), [&](std::size_t c) {
    Rng rng = stream.chunk_rng(c);
    for (std::size_t i = 0; i < chunk_length(n, c); ++i) {
      const Vec z = sampler(rng);
      const double v = g(z);
      if (!std::isfinite(v)) {
        throw NumericalError("integrand is not finite at " + describe(ProjectivePoint(z)));
      }
      values[c * kChunkSize + i] = v;
    }
  });
  return summarize(values, stream.seed);
}

}  // namespace kahler
