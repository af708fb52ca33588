#pragma once

// Seeded Monte Carlo machinery. Every sampler draws from a SeededStream that
// is split into fixed-size chunks, each with its own generator, so a run is
// reproducible bit-for-bit whatever the number of worker threads.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "kahler/polynomial.hpp"
#include "kahler/projlin.hpp"

namespace kahler {

using Rng = std::mt19937_64;

/// Samples generated per generator chunk. Part of the layout: changing it
/// changes the sample sequence.
inline constexpr std::size_t kChunkSize = 1024;

struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;

  /// Generator for chunk number `chunk` of this stream.
  Rng chunk_rng(std::uint64_t chunk) const;
  /// A stream with a different index, for an independent sub-computation.
  SeededStream substream(std::uint64_t index) const;
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Count-weighted mean and pooled variance (Chan et al. update).
MCEstimate merge(const MCEstimate& a, const MCEstimate& b);

/// Mean / standard error of a list of i.i.d. observations.
MCEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

/// Entry-wise estimate of a matrix-valued mean.
struct MatrixEstimate {
  Mat value;
  Eigen::MatrixXd std_error;  // sqrt(var(re) + var(im)) of the mean
  long n_samples = 0;
  std::uint64_t seed = 0;
  /// Largest std_error over the entries.
  double max_error() const;
};

Vec gaussian_vector(Rng& rng, int n);

/// FS-uniform point of P^N, returned as a unit vector.
Vec sample_pn(Rng& rng, int n_dim);
ProjectivePoint sample_pn_point(Rng& rng, int n_dim);

/// Haar-uniform k-plane in C^{N+1}, as a k x (N+1) matrix with orthonormal rows.
Mat sample_grassmannian(Rng& rng, int k, int n_dim);

/// Haar-distributed unitary matrix.
Mat sample_unitary(Rng& rng, int n);

/// Random traceless Hermitian matrix with Frobenius norm 1.
Mat sample_traceless_hermitian(Rng& rng, int n);

/// Intersection of a uniformly random projective line with X = {f = 0}:
/// the d roots as unit vectors. Lines meeting X at the chart's point at
/// infinity are rejected and redrawn.
std::vector<Vec> sample_line_roots(Rng& rng, const HomogeneousPolynomial& f);

/// Roots of c_0 + c_1 s + ... + c_d s^d via companion-matrix eigenvalues.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

/// Points with weights. Samples come in groups (one per independent draw:
/// a single point on P^N, the d roots of one line on a hypersurface); standard
/// errors are computed across groups.
struct WeightedSampleBatch {
  std::vector<Vec> points;
  std::vector<double> weights;
  std::vector<std::size_t> group_offsets;  // size n_groups + 1
  double mass = 1.0;
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
  std::size_t n_groups() const { return group_offsets.size() - 1; }

  /// One record per point: real/imag coordinate pairs followed by the weight.
  void dump(std::ostream& os) const;
};

/// n FS-uniform points of P^N, each of weight 1/n.
WeightedSampleBatch sample_pn_batch(const SeededStream& stream, int n_dim, long n);

/// Points of X from n_lines random lines; weights V / (d n_lines) with V = d,
/// so the batch integrates omega^n over X with total mass d.
WeightedSampleBatch sample_hypersurface(const SeededStream& stream,
                                        const HomogeneousPolynomial& f, long n_lines);

/// Estimate of (1/mass) sum_i w_i g(i) over the batch, i.e. the normalized
/// integral of g. g receives the point index.
MCEstimate batch_mean(const WeightedSampleBatch& batch,
                      const std::function<double(std::size_t)>& g);

/// Entry-wise normalized integral of a matrix-valued function.
MatrixEstimate batch_matrix_mean(const WeightedSampleBatch& batch,
                                 const std::function<Mat(std::size_t)>& g);

/// Total mass estimate of the batch: roots found per line, times V / d.
MCEstimate batch_mass(const WeightedSampleBatch& batch);

/// Two independent estimates of the two sides of an identity.
struct IdentityReport {
  std::string name;
  MCEstimate lhs;
  MCEstimate rhs;
  double gap = 0.0;
  double tolerance = 0.0;  // 3 * combined standard error plus a rounding floor
  bool pass = false;
};

IdentityReport make_identity_report(const std::string& name, const MCEstimate& lhs,
                                    const MCEstimate& rhs);

using PointSampler = std::function<Vec(Rng&)>;

/// Mean of g over n draws of `sampler`; throws NumericalError for non-finite
/// integrand values, reporting the offending point.
MCEstimate estimate(const std::function<double(const Vec&)>& g,
                    const PointSampler& sampler, long n, const SeededStream& stream);

}  // namespace kahler
