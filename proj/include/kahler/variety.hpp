#pragma once

// The varieties the energy functionals are evaluated on (a smooth hypersurface
// of P^{m+1}, or P^N itself), and frozen sample batches carrying the tangent
// frames needed by the integrands.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kahler/polynomial.hpp"
#include "kahler/sampler.hpp"

namespace kahler {

class Variety {
 public:
  static Variety hypersurface(const HomogeneousPolynomial& f);
  static Variety projective_space(int n_dim);

  bool is_hypersurface() const { return poly_.has_value(); }
  /// Throws ContractError for P^N.
  const HomogeneousPolynomial& polynomial() const;

  int ambient_dim() const { return n_ambient_; }
  int dim() const { return is_hypersurface() ? n_ambient_ - 1 : n_ambient_; }
  int degree() const { return is_hypersurface() ? poly_->degree() : 1; }
  /// V = integral of omega^m over X (= d).
  double volume() const { return static_cast<double>(degree()); }
  /// Average scalar curvature: m(m+2-d) on a hypersurface, N(N+1) on P^N.
  double mu() const;
  std::string describe() const;

 private:
  Variety(int n_ambient, std::optional<HomogeneousPolynomial> poly)
      : n_ambient_(n_ambient), poly_(std::move(poly)) {}
  int n_ambient_;
  std::optional<HomogeneousPolynomial> poly_;
};

/// A fixed sample of X with orthonormal tangent frames, reused across group
/// elements so that profiles and finite differences share random numbers.
// Diagonal phase matrices diag(1, z_1, ..., z_N) with z_k^d = 1 under which f
// is multiplied by a constant. They preserve X and the Fubini-Study metric.
std::vector<Vec> diagonal_symmetries(const HomogeneousPolynomial& f);

// A fixed weighted sample of X reused for every sigma. For hypersurfaces each
// sampled point is replaced by its orbit under diagonal_symmetries(f) (same
// group, weight split evenly); the estimators stay unbiased and moments of
// symmetric sigma come out exactly diagonal.
class FrozenBatch {
 public:
  FrozenBatch(const Variety& variety, const SeededStream& stream, long n_groups,
              bool symmetrize = true);

  const Variety& variety() const { return variety_; }
  const WeightedSampleBatch& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const Vec& point(std::size_t i) const { return samples_.points[i]; }
  /// (N+1) x m orthonormal frame of T_x X at point i.
  const Mat& frame(std::size_t i) const { return frames_[i]; }
  /// Ricci matrices on the frames, computed on first use.
  const std::vector<Mat>& ricci() const;
  const SeededStream& stream() const { return stream_; }

 private:
  struct RicciCache;
  Variety variety_;
  SeededStream stream_;
  WeightedSampleBatch samples_;
  std::vector<Mat> frames_;
  std::shared_ptr<RicciCache> ricci_;
};

}  // namespace kahler
