#pragma once

// Toy vector bundles E in C^N x X presented by frame matrices A(x), with the
// Donaldson functional L, its geodesic derivatives, the balancing condition
// and the Gieseker norm. The base X is P^n or a Grassmannian Gr(k, C^{n+1}),
// sampled FS-uniformly; a base point is a k x (n+1) matrix with orthonormal
// rows (k = 1 for P^n).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kahler/projlin.hpp"
#include "kahler/sampler.hpp"

namespace kahler {

struct GiesekerPoint {
  Mat tensor;  // a(mu, I): rows indexed by mu, columns by increasing r-tuples I
};

struct GiesekerData {
  std::function<Vec(const Mat&)> tau;  // basis sections of det E^* at a base point
  GiesekerPoint point;
};

struct BundleChart {
  std::string name;
  int base_k = 1;      // base is Gr(base_k, C^{base_n + 1})
  int base_n = 1;
  int base_dim = 1;    // complex dimension of the base
  int rank = 1;        // r
  int n_sections = 2;  // N
  std::function<Mat(const Mat&)> frame;  // N x r, full rank
  std::optional<GiesekerData> gieseker;
  double c = 1.0;      // constant in front of L

  Mat sample_base(Rng& rng) const;
};

/// Frozen sample of base points with the frame matrices evaluated there.
class BundleBatch {
 public:
  BundleBatch(const BundleChart& chart, const SeededStream& stream, long n);
  const BundleChart& chart() const { return chart_; }
  std::size_t size() const { return frames_.size(); }
  const Mat& base_point(std::size_t i) const { return base_[i]; }
  const Mat& frame(std::size_t i) const { return frames_[i]; }
  const WeightedSampleBatch& samples() const { return samples_; }

 private:
  BundleChart chart_;
  std::vector<Mat> base_;
  std::vector<Mat> frames_;
  WeightedSampleBatch samples_;  // carries weights and groups only
};

/// L(sigma) = c E[log det(A^* S A) / det(A^* A)], S = sigma^* sigma.
MCEstimate donaldson_L(const BundleBatch& batch, const GroupElement& sigma);
MCEstimate L_derivative(const BundleBatch& batch, const GroupElement& sigma,
                        const GeodesicDirection& c);
MCEstimate L_second_derivative(const BundleBatch& batch, const GroupElement& sigma,
                               const GeodesicDirection& c);

/// L(sigma) against c (log ||sigma T||^2 - log ||T||^2), independent seeds.
IdentityReport theorem2_check(const BundleChart& chart, const GroupElement& sigma,
                              const SeededStream& lhs_stream, const SeededStream& rhs_stream,
                              long n);

/// (a^sigma)^mu_I = sum_J det(sigma_{I,J}) a^mu_J.
GiesekerPoint act(const GiesekerPoint& a, const GroupElement& sigma, int rank);

/// log ||a^sigma||^2 = E[log sum_I |sum_mu a^mu_I tau_mu(x)|^2].
MCEstimate gieseker_norm(const GiesekerPoint& a, const BundleChart& chart,
                         const GroupElement& sigma, const SeededStream& stream, long n);

/// Largest relative mismatch between minors of A(x) and sum_mu a^mu tau_mu(x)
/// over n random base points.
double gieseker_consistency(const BundleChart& chart, const SeededStream& stream, long n);

struct BundleBalanceState {
  GroupElement sigma;
  Mat residual;
  double residual_norm;
  int iteration = 0;
  bool converged = false;
};

/// E[A_hat A_hat^*] - (r/N) I with A_hat the orthonormalized sigma A.
BundleBalanceState bundle_balanced_residual(const BundleBatch& batch,
                                            const GroupElement& sigma);
MatrixEstimate bundle_moment_matrix(const BundleBatch& batch, const GroupElement& sigma);

std::vector<BundleBalanceState> bundle_balance_iterate(const BundleBatch& batch,
                                                       const GroupElement& sigma_init,
                                                       int max_iters, double tol);

}  // namespace kahler
