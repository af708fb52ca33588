#include "kahler/wedge.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "kahler/error.hpp"

namespace kahler {

std::vector<double> elementary_symmetric(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k >= 1; --k) e[k] += e[k - 1] * x(i);
  }
  return e;
}

WedgePair::WedgePair(const Mat& g, const Mat& g_sigma) {
  if (g.rows() != g.cols() || g_sigma.rows() != g.rows() || g_sigma.cols() != g.cols()) {
    throw ContractError("mixed_wedge_ratios: metric size mismatch");
  }
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) {
    throw ContractError("mixed_wedge_ratios: base metric is not positive definite");
  }
  const Mat l = llt.matrixL();
  l_inv_ = l.triangularView<Eigen::Lower>().solve(Mat::Identity(g.rows(), g.cols()));
  Mat m = l_inv_ * g_sigma * l_inv_.adjoint();
  m = (m + m.adjoint()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("mixed_wedge_ratios: eigen solver failed");
  }
  lambda_ = eig.eigenvalues();
  if (!(lambda_.minCoeff() > 0.0)) {
    throw ContractError("mixed_wedge_ratios: pulled-back metric is not positive definite");
  }
  u_ = eig.eigenvectors();
}

std::vector<double> WedgePair::ratios() const {
  const int m = dim();
  const std::vector<double> e = elementary_symmetric(lambda_);
  std::vector<double> r(m + 1);
  for (int k = 0; k <= m; ++k) {
    r[k] = e[m - k] / static_cast<double>(binomial(m, k));
  }
  return r;
}

Mat WedgePair::transform(const Mat& h) const {
  return u_.adjoint() * l_inv_ * h * l_inv_.adjoint() * u_;
}

namespace {

// i! (m-1-i)! / m!
double linear_weight(int m, int i) {
  return 1.0 / (static_cast<double>(m) * static_cast<double>(binomial(m - 1, i)));
}

}  // namespace

double WedgePair::linear_ratio(const Mat& h, int i) const {
  std::vector<double> w(dim(), 0.0);
  w.at(i) = 1.0;
  return linear_ratio_sum(h, w);
}

double WedgePair::linear_ratio_sum(const Mat& h, const std::vector<double>& weight) const {
  const int m = dim();
  const Mat hp = transform(h);
  double total = 0.0;
  Eigen::VectorXd rest(m - 1);
  for (int j = 0; j < m; ++j) {
    for (int a = 0, b = 0; a < m; ++a) {
      if (a != j) rest(b++) = lambda_(a);
    }
    const std::vector<double> e = elementary_symmetric(rest);
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      if (weight[i] == 0.0) continue;
      s += weight[i] * linear_weight(m, i) * e[m - 1 - i];
    }
    total += hp(j, j).real() * s;
  }
  return total;
}

std::vector<double> mixed_wedge_ratios(const Mat& g, const Mat& g_sigma) {
  return WedgePair(g, g_sigma).ratios();
}

cplx mixed_discriminant(const std::vector<Mat>& mats) {
  const int m = static_cast<int>(mats.size());
  if (m == 0) return 1.0;
  cplx total = 0.0;
  double factorial = 1.0;
  for (int k = 2; k <= m; ++k) factorial *= k;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Mat s = Mat::Zero(mats[0].rows(), mats[0].cols());
    int count = 0;
    for (int j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        s += mats[j];
        ++count;
      }
    }
    const double sign = ((m - count) % 2 == 0) ? 1.0 : -1.0;
    total += sign * s.determinant();
  }
  return total / factorial;
}

}  // namespace kahler
