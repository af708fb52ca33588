#include "kahler/energies.hpp"

#include <cmath>
#include <numeric>

#include "kahler/error.hpp"
#include "kahler/hypergeo.hpp"
#include "kahler/parallel.hpp"

namespace kahler {

Normalization normalization(const Variety& x) {
  Normalization n;
  n.V = x.volume();
  n.D = 1.0;
  n.mu = x.mu();
  n.m = x.dim();
  n.d = x.degree();
  return n;
}

namespace {

void require_size(const FrozenBatch& batch, const Mat& sigma) {
  if (sigma.rows() != batch.variety().ambient_dim() + 1) {
    throw ContractError("group element size does not match the ambient space");
  }
}

EnergyReport report(const std::string& name, const FrozenBatch& batch,
                    const GroupElement& sigma, const MCEstimate& value) {
  return {name, value, sigma.matrix(), batch.variety().describe(),
          normalization(batch.variety())};
}

// Derivative of phi_sigma at x along the frame: b_j = x^* S v_j / x^* S x
// (frame vectors are orthogonal to x).
Vec dphi(const SigmaPoint& p) {
  return (p.pushed.adjoint() * p.y).conjugate() / p.y.squaredNorm();
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

SigmaPoint sigma_point(const FrozenBatch& batch, std::size_t i, const Mat& sigma) {
  const Vec& x = batch.point(i);
  const Mat& frame = batch.frame(i);
  const int m = static_cast<int>(frame.cols());
  Vec y = sigma * x;
  Mat pushed = sigma * frame;
  Mat gram = frame_gram(sigma, x, frame);
  WedgePair pair(Mat::Identity(m, m), gram);
  std::vector<double> ratio = pair.ratios();
  const double phi = std::log(y.squaredNorm() / x.squaredNorm());
  return {phi, std::move(y), std::move(pushed), std::move(gram), std::move(pair),
          std::move(ratio)};
}

EnergyReport f0_energy(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  const double m = batch.variety().dim();
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    return -p.phi * sum(p.ratio) / (m + 1.0);
  });
  return report("F0", batch, sigma, e);
}

EnergyReport j_energy(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  const int m = batch.variety().dim();
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) w[i] = (i + 1.0) / (m + 1.0);
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    const Vec b = dphi(p);
    return p.pair.linear_ratio_sum(b * b.adjoint(), w);
  });
  return report("J", batch, sigma, e);
}

EnergyReport i_energy(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    return p.phi * (1.0 - p.ratio[0]);
  });
  return report("I", batch, sigma, e);
}

EnergyReport mabuchi_energy(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  const int m = batch.variety().dim();
  const double mu = batch.variety().mu();
  const std::vector<Mat>& ric = batch.ricci();
  const std::vector<double> ones(m, 1.0);
  const MCEstimate e = batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    const double r0 = p.ratio[0];
    const double ric_term = p.pair.linear_ratio_sum(ric[i], ones);
    return r0 * std::log(r0) - p.phi * (ric_term - mu / (m + 1.0) * sum(p.ratio));
  });
  return report("mabuchi", batch, sigma, e);
}

EnergyReport energy(const std::string& name, const FrozenBatch& batch,
                    const GroupElement& sigma) {
  if (name == "F0") return f0_energy(batch, sigma);
  if (name == "I") return i_energy(batch, sigma);
  if (name == "J") return j_energy(batch, sigma);
  if (name == "mabuchi") return mabuchi_energy(batch, sigma);
  throw ConfigError("unknown energy functional '" + name + "'");
}

MCEstimate f0_derivative(const FrozenBatch& batch, const GroupElement& sigma,
                         const GeodesicDirection& c) {
  require_size(batch, sigma.matrix());
  const Mat u = c.matrix() + c.matrix().adjoint();
  return batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    const double phidot = p.y.dot(u * p.y).real() / p.y.squaredNorm();
    return -phidot * p.ratio[0];
  });
}

MCEstimate f0_second_derivative(const FrozenBatch& batch, const GroupElement& sigma,
                                const GeodesicDirection& c) {
  require_size(batch, sigma.matrix());
  const Mat& cm = c.matrix();
  const Mat u = cm + cm.adjoint();
  const Mat u2 = cm.adjoint() * u + u * cm;
  return batch_mean(batch.samples(), [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    const double yy = p.y.squaredNorm();
    const Vec uy = u * p.y;
    const double yuy = p.y.dot(uy).real();
    const double phiddot = (yy * p.y.dot(u2 * p.y).real() - yuy * yuy) / (yy * yy);
    // b_j = d phidot (v_j)
    const Vec b = ((p.pushed.adjoint() * uy).conjugate() * yy -
                   (p.pushed.adjoint() * p.y).conjugate() * yuy) /
                  (yy * yy);
    const double normal = b.dot(p.gram.ldlt().solve(b)).real();
    return -p.ratio[0] * (phiddot - normal);
  });
}

namespace {

// Per-point weight w_i r_0 and moment y y^* / |y|^2 of sigma(X).
void moments(const FrozenBatch& batch, const Mat& sigma, std::vector<double>& w,
             std::vector<Mat>& mom) {
  const std::size_t n = batch.size();
  w.resize(n);
  mom.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const SigmaPoint p = sigma_point(batch, i, sigma);
    w[i] = batch.samples().weights[i] * p.ratio[0];
    mom[i] = p.y * p.y.adjoint() / p.y.squaredNorm();
  });
}

BalanceState state_from(const GroupElement& sigma, const Mat& m, int iteration) {
  const int n = static_cast<int>(m.rows());
  Mat residual = m - Mat::Identity(n, n) / static_cast<double>(n);
  residual = (residual + residual.adjoint()).eval() * 0.5;
  const double norm = hermitian_norm(residual);
  return {sigma, residual, norm, iteration, false};
}

Mat self_normalized_moment(const FrozenBatch& batch, const Mat& sigma) {
  std::vector<double> w;
  std::vector<Mat> mom;
  moments(batch, sigma, w, mom);
  const int n = static_cast<int>(sigma.rows());
  Mat total = Mat::Zero(n, n);
  double mass = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    total += w[i] * mom[i];
    mass += w[i];
  }
  if (!(mass > 0.0)) throw NumericalError("balanced_residual: zero pulled-back mass");
  return total / mass;
}

}  // namespace

BalanceState balanced_residual(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  return state_from(sigma, self_normalized_moment(batch, sigma.matrix()), 0);
}

MatrixEstimate moment_matrix(const FrozenBatch& batch, const GroupElement& sigma) {
  require_size(batch, sigma.matrix());
  return batch_matrix_mean(batch.samples(), [&](std::size_t i) -> Mat {
    const SigmaPoint p = sigma_point(batch, i, sigma.matrix());
    return p.ratio[0] * p.y * p.y.adjoint() / p.y.squaredNorm();
  });
}

std::vector<BalanceState> balance_iterate(const FrozenBatch& batch,
                                          const GroupElement& sigma_init, int max_iters,
                                          double tol) {
  require_size(batch, sigma_init.matrix());
  if (max_iters < 0) throw ContractError("balance_iterate: max_iters must be nonnegative");
  const int n = static_cast<int>(sigma_init.size());
  std::vector<BalanceState> trace;
  GroupElement sigma = GroupElement::normalized(sigma_init.matrix());
  Mat m = self_normalized_moment(batch, sigma.matrix());
  trace.push_back(state_from(sigma, m, 0));
  for (int it = 1; trace.back().residual_norm >= tol && it <= max_iters; ++it) {
    const Mat q = static_cast<double>(n) * m;
    sigma = GroupElement::normalized(hermitian_inv_sqrt(q) * sigma.matrix());
    m = self_normalized_moment(batch, sigma.matrix());
    trace.push_back(state_from(sigma, m, it));
  }
  trace.back().converged = trace.back().residual_norm < tol;
  return trace;
}

EnergyProfile profile(const std::string& name, const FrozenBatch& batch,
                      const GeodesicDirection& c, const GroupElement& sigma0,
                      const std::vector<double>& t_grid) {
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) {
      throw ContractError("profile: t grid must be strictly increasing");
    }
  }
  EnergyProfile out{name, c.matrix(), sigma0.matrix(), t_grid, {}};
  for (double t : t_grid) {
    out.values.push_back(energy(name, batch, exp_path(c, t, sigma0)).value);
  }
  return out;
}

}  // namespace kahler
