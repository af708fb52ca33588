#include "kahler/variety.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "kahler/error.hpp"
#include "kahler/hypergeo.hpp"
#include "kahler/parallel.hpp"

namespace kahler {

Variety Variety::hypersurface(const HomogeneousPolynomial& f) {
  if (f.n_vars() < 3) throw ContractError("hypersurface: need an ambient P^N with N >= 2");
  return Variety(f.n_vars() - 1, f);
}

Variety Variety::projective_space(int n_dim) {
  if (n_dim < 1) throw ContractError("projective_space: N must be at least 1");
  return Variety(n_dim, std::nullopt);
}

const HomogeneousPolynomial& Variety::polynomial() const {
  if (!poly_) throw ContractError("variety is a projective space, not a hypersurface");
  return *poly_;
}

double Variety::mu() const {
  const double m = dim();
  if (!is_hypersurface()) return m * (m + 1.0);
  return m * (m + 2.0 - degree());
}

std::string Variety::describe() const {
  std::ostringstream os;
  if (is_hypersurface()) {
    os << "hypersurface in P^" << n_ambient_ << " of degree " << degree() << ": "
       << poly_->to_string();
  } else {
    os << "P^" << n_ambient_;
  }
  return os.str();
}

std::vector<Vec> diagonal_symmetries(const HomogeneousPolynomial& f) {
  const int n = f.n_vars();
  const int d = f.degree();
  std::vector<Vec> out;
  double count = std::pow(static_cast<double>(d), n - 1);
  if (count > 4096) return {Vec::Ones(n)};
  std::vector<int> k(n, 0);  // phase exponents, k[0] = 0
  while (true) {
    Vec z(n);
    for (int j = 0; j < n; ++j) z(j) = std::polar(1.0, 2.0 * M_PI * k[j] / d);
    // every monomial must pick up the same root of unity
    int common = -1;
    bool ok = true;
    for (const auto& t : f.terms()) {
      int e = 0;
      for (int j = 0; j < n; ++j) e += t.exponent[j] * k[j];
      e %= d;
      if (common < 0) common = e;
      else if (e != common) ok = false;
    }
    if (ok) out.push_back(z);
    int j = 1;
    while (j < n && ++k[j] == d) k[j++] = 0;
    if (j == n) break;
  }
  return out;
}

namespace {

WeightedSampleBatch symmetrized(const WeightedSampleBatch& b, const std::vector<Vec>& group) {
  if (group.size() <= 1) return b;
  WeightedSampleBatch out;
  out.mass = b.mass;
  out.seed = b.seed;
  out.group_offsets.push_back(0);
  const double g = static_cast<double>(group.size());
  for (std::size_t grp = 0; grp < b.n_groups(); ++grp) {
    for (std::size_t i = b.group_offsets[grp]; i < b.group_offsets[grp + 1]; ++i) {
      for (const Vec& z : group) {
        out.points.push_back(z.cwiseProduct(b.points[i]));
        out.weights.push_back(b.weights[i] / g);
      }
    }
    out.group_offsets.push_back(out.points.size());
  }
  return out;
}

}  // namespace

struct FrozenBatch::RicciCache {
  std::once_flag once;
  std::vector<Mat> values;
};

FrozenBatch::FrozenBatch(const Variety& variety, const SeededStream& stream, long n_groups,
                         bool symmetrize)
    : variety_(variety), stream_(stream), ricci_(std::make_shared<RicciCache>()) {
  if (variety.is_hypersurface()) {
    samples_ = sample_hypersurface(stream, variety.polynomial(), n_groups);
    if (symmetrize) samples_ = symmetrized(samples_, diagonal_symmetries(variety.polynomial()));
  } else {
    samples_ = sample_pn_batch(stream, variety.ambient_dim(), n_groups);
  }
  frames_.resize(samples_.size());
  parallel_for(samples_.size(), [&](std::size_t i) {
    const Vec& x = samples_.points[i];
    if (variety_.is_hypersurface()) {
      frames_[i] = tangent_frame(variety_.polynomial(), ProjectivePoint(x)).vectors;
    } else {
      Eigen::HouseholderQR<Mat> qr(x);
      const Mat q = qr.householderQ();
      frames_[i] = q.rightCols(x.size() - 1);
    }
  });
}

const std::vector<Mat>& FrozenBatch::ricci() const {
  std::call_once(ricci_->once, [this] {
    std::vector<Mat> values(samples_.size());
    parallel_for(samples_.size(), [&](std::size_t i) {
      if (variety_.is_hypersurface()) {
        const TangentFrame tf{ProjectivePoint(samples_.points[i]), frames_[i], Vec()};
        values[i] = ricci_matrix(variety_.polynomial(), tf);
      } else {
        const int m = variety_.dim();
        values[i] = Mat::Identity(m, m) * static_cast<double>(m + 1);
      }
    });
    ricci_->values = std::move(values);
  });
  return ricci_->values;
}

}  // namespace kahler
