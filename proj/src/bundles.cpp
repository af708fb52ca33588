#include "kahler/bundles.hpp"

#include <cmath>

#include "kahler/error.hpp"
#include "kahler/parallel.hpp"

namespace kahler {

Mat BundleChart::sample_base(Rng& rng) const {
  if (base_k == 1) return sample_pn(rng, base_n).transpose();
  return sample_grassmannian(rng, base_k, base_n);
}

namespace {

std::size_t chunks_for(long n) {
  return static_cast<std::size_t>((n + static_cast<long>(kChunkSize) - 1) /
                                  static_cast<long>(kChunkSize));
}

void require_full_rank(const Mat& a, const Mat& base) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > 1e-10 * s(0))) {
    throw NumericalError("bundle frame is rank deficient at base point " +
                         describe(ProjectivePoint(Eigen::Map<const Vec>(base.data(), base.size()))));
  }
}

void require_size(const BundleChart& chart, const Mat& sigma) {
  if (sigma.rows() != chart.n_sections) {
    throw ContractError("group element size does not match the number of sections");
  }
}

// Column-orthonormal basis of the column span of b.
Mat orthonormalize(const Mat& b) {
  Eigen::HouseholderQR<Mat> qr(b);
  return qr.householderQ() * Mat::Identity(b.rows(), b.cols());
}

double log_det_hpd(const Mat& h) {
  Eigen::LLT<Mat> llt(h);
  if (llt.info() != Eigen::Success) throw NumericalError("frame Gram matrix is not definite");
  const Mat l = llt.matrixL();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += 2.0 * std::log(l(i, i).real());
  return s;
}

MCEstimate scaled(MCEstimate e, double c) {
  e.value *= c;
  e.std_error *= std::abs(c);
  return e;
}

}  // namespace

BundleBatch::BundleBatch(const BundleChart& chart, const SeededStream& stream, long n)
    : chart_(chart) {
  if (n < 2) throw ContractError("bundle batch: need at least two samples");
  base_.resize(static_cast<std::size_t>(n));
  frames_.resize(static_cast<std::size_t>(n));
  parallel_for(chunks_for(n), [&](std::size_t c) {
    Rng rng = stream.chunk_rng(c);
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min<std::size_t>(begin + kChunkSize, base_.size());
    for (std::size_t i = begin; i < end; ++i) {
      base_[i] = chart_.sample_base(rng);
      frames_[i] = chart_.frame(base_[i]);
      require_full_rank(frames_[i], base_[i]);
    }
  });
  samples_.points.resize(base_.size());
  for (std::size_t i = 0; i < base_.size(); ++i) {
    samples_.points[i] = Eigen::Map<const Vec>(base_[i].data(), base_[i].size());
  }
  samples_.weights.assign(base_.size(), 1.0 / static_cast<double>(n));
  samples_.group_offsets.resize(base_.size() + 1);
  for (std::size_t i = 0; i <= base_.size(); ++i) samples_.group_offsets[i] = i;
  samples_.mass = 1.0;
  samples_.seed = stream.seed;
}

MCEstimate donaldson_L(const BundleBatch& batch, const GroupElement& sigma) {
  require_size(batch.chart(), sigma.matrix());
  const Mat& s = sigma.matrix();
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const Mat& a = batch.frame(i);
    const Mat sa = s * a;
    return log_det_hpd(sa.adjoint() * sa) - log_det_hpd(a.adjoint() * a);
  });
  return scaled(e, batch.chart().c);
}

MCEstimate L_derivative(const BundleBatch& batch, const GroupElement& sigma,
                        const GeodesicDirection& c) {
  require_size(batch.chart(), sigma.matrix());
  const Mat& s = sigma.matrix();
  const Mat u = c.matrix() + c.matrix().adjoint();
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const Mat sa = s * batch.frame(i);
    const Mat k = sa.adjoint() * sa;
    return k.ldlt().solve(sa.adjoint() * u * sa).trace().real();
  });
  return scaled(e, batch.chart().c);
}

MCEstimate L_second_derivative(const BundleBatch& batch, const GroupElement& sigma,
                               const GeodesicDirection& c) {
  require_size(batch.chart(), sigma.matrix());
  const Mat& s = sigma.matrix();
  const Mat u = c.matrix() + c.matrix().adjoint();
  const int n = batch.chart().n_sections;
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const Mat q = orthonormalize(s * batch.frame(i));
    const Mat p = q * q.adjoint();
    return ((Mat::Identity(n, n) - p) * u * p * u).trace().real();
  });
  return scaled(e, batch.chart().c);
}

GiesekerPoint act(const GiesekerPoint& a, const GroupElement& sigma, int rank) {
  const int n = static_cast<int>(sigma.size());
  const auto subsets = index_subsets(n, rank);
  if (static_cast<std::size_t>(a.tensor.cols()) != subsets.size()) {
    throw ContractError("Gieseker tensor has the wrong number of index tuples");
  }
  const Mat& s = sigma.matrix();
  const Eigen::Index nt = static_cast<Eigen::Index>(subsets.size());
  Mat minors(nt, nt);  // minors(I, J) = det sigma_{I,J}
  Mat block(rank, rank);
  for (Eigen::Index i = 0; i < nt; ++i) {
    for (Eigen::Index j = 0; j < nt; ++j) {
      for (int p = 0; p < rank; ++p) {
        for (int q = 0; q < rank; ++q) block(p, q) = s(subsets[i][p], subsets[j][q]);
      }
      minors(i, j) = block.determinant();
    }
  }
  return {a.tensor * minors.transpose()};
}

namespace {

void require_gieseker(const BundleChart& chart) {
  if (!chart.gieseker) throw ContractError("bundle chart carries no Gieseker data");
}

double log_tensor_norm(const Mat& tensor, const Vec& tau) {
  return std::log((tau.transpose() * tensor).squaredNorm());
}

}  // namespace

MCEstimate gieseker_norm(const GiesekerPoint& a, const BundleChart& chart,
                         const GroupElement& sigma, const SeededStream& stream, long n) {
  require_gieseker(chart);
  if (a.tensor.norm() == 0.0) throw ContractError("Gieseker point is zero");
  const GiesekerPoint as = act(a, sigma, chart.rank);
  return estimate(
      [&](const Vec& flat) {
        const Mat w = Eigen::Map<const Mat>(flat.data(), chart.base_k, chart.base_n + 1);
        return log_tensor_norm(as.tensor, chart.gieseker->tau(w));
      },
      [&](Rng& rng) {
        const Mat w = chart.sample_base(rng);
        return Vec(Eigen::Map<const Vec>(w.data(), w.size()));
      },
      n, stream);
}

IdentityReport theorem2_check(const BundleChart& chart, const GroupElement& sigma,
                              const SeededStream& lhs_stream, const SeededStream& rhs_stream,
                              long n) {
  require_gieseker(chart);
  require_size(chart, sigma.matrix());
  const BundleBatch batch(chart, lhs_stream, n);
  const MCEstimate lhs = donaldson_L(batch, sigma);
  const Mat& a = chart.gieseker->point.tensor;
  const Mat as = act(chart.gieseker->point, sigma, chart.rank).tensor;
  const MCEstimate ratio = estimate(
      [&](const Vec& flat) {
        const Mat w = Eigen::Map<const Mat>(flat.data(), chart.base_k, chart.base_n + 1);
        const Vec tau = chart.gieseker->tau(w);
        return log_tensor_norm(as, tau) - log_tensor_norm(a, tau);
      },
      [&](Rng& rng) {
        const Mat w = chart.sample_base(rng);
        return Vec(Eigen::Map<const Vec>(w.data(), w.size()));
      },
      n, rhs_stream);
  return make_identity_report("theorem2", lhs, scaled(ratio, chart.c));
}

double gieseker_consistency(const BundleChart& chart, const SeededStream& stream, long n) {
  require_gieseker(chart);
  const auto subsets = index_subsets(chart.n_sections, chart.rank);
  double worst = 0.0;
  Rng rng = stream.chunk_rng(0);
  for (long k = 0; k < n; ++k) {
    const Mat w = chart.sample_base(rng);
    const Mat a = chart.frame(w);
    const Vec tau = chart.gieseker->tau(w);
    const Vec expected = (tau.transpose() * chart.gieseker->point.tensor).transpose();
    Vec minors(static_cast<Eigen::Index>(subsets.size()));
    Mat block(chart.rank, chart.rank);
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      for (int p = 0; p < chart.rank; ++p) block.row(p) = a.row(subsets[j][p]);
      minors(static_cast<Eigen::Index>(j)) = block.determinant();
    }
    worst = std::max(worst, (minors - expected).norm() / expected.norm());
  }
  return worst;
}

namespace {

BundleBalanceState bundle_state(const GroupElement& sigma, const Mat& m, int rank,
                                int iteration) {
  const int n = static_cast<int>(m.rows());
  Mat residual = m - Mat::Identity(n, n) * (static_cast<double>(rank) / n);
  residual = (residual + residual.adjoint()).eval() * 0.5;
  return {sigma, residual, hermitian_norm(residual), iteration, false};
}

Mat empirical_moment(const BundleBatch& batch, const Mat& sigma) {
  std::vector<Mat> p(batch.size());
  parallel_for(batch.size(), [&](std::size_t i) {
    const Mat q = orthonormalize(sigma * batch.frame(i));
    p[i] = q * q.adjoint();
  });
  const int n = batch.chart().n_sections;
  Mat total = Mat::Zero(n, n);
  for (std::size_t i = 0; i < p.size(); ++i) total += batch.samples().weights[i] * p[i];
  return total;
}

}  // namespace

BundleBalanceState bundle_balanced_residual(const BundleBatch& batch,
                                            const GroupElement& sigma) {
  require_size(batch.chart(), sigma.matrix());
  return bundle_state(sigma, empirical_moment(batch, sigma.matrix()), batch.chart().rank, 0);
}

MatrixEstimate bundle_moment_matrix(const BundleBatch& batch, const GroupElement& sigma) {
  require_size(batch.chart(), sigma.matrix());
  return batch_matrix_mean(batch.samples(), [&](std::size_t i) -> Mat {
    const Mat q = orthonormalize(sigma.matrix() * batch.frame(i));
    return q * q.adjoint();
  });
}

std::vector<BundleBalanceState> bundle_balance_iterate(const BundleBatch& batch,
                                                       const GroupElement& sigma_init,
                                                       int max_iters, double tol) {
  require_size(batch.chart(), sigma_init.matrix());
  if (max_iters < 0) throw ContractError("balance_iterate: max_iters must be nonnegative");
  const int n = batch.chart().n_sections;
  const int r = batch.chart().rank;
  std::vector<BundleBalanceState> trace;
  GroupElement sigma = GroupElement::normalized(sigma_init.matrix());
  Mat m = empirical_moment(batch, sigma.matrix());
  trace.push_back(bundle_state(sigma, m, r, 0));
  for (int it = 1; trace.back().residual_norm >= tol && it <= max_iters; ++it) {
    const Mat q = m * (static_cast<double>(n) / r);
    sigma = GroupElement::normalized(hermitian_inv_sqrt(q) * sigma.matrix());
    m = empirical_moment(batch, sigma.matrix());
    trace.push_back(bundle_state(sigma, m, r, it));
  }
  trace.back().converged = trace.back().residual_norm < tol;
  return trace;
}

}  // namespace kahler
