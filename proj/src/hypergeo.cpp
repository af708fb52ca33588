#include "kahler/hypergeo.hpp"

#include <cmath>

#include "kahler/error.hpp"

namespace kahler {

namespace {

constexpr double kOnVarietyTol = 1e-8;
constexpr double kSingularTol = 1e-10;

void require_on_variety(const HomogeneousPolynomial& f, const Vec& x) {
  if (!(f.relative_value(x) <= kOnVarietyTol)) {
    throw ContractError("point is not on the hypersurface: " + describe(ProjectivePoint(x)));
  }
}

void require_tangent(const HomogeneousPolynomial& f, const ProjectivePoint& x,
                     const TangentVector& a) {
  if (!x.same_point(a.base(), 1e-12)) {
    throw ContractError("ricci: tangent vector based at a different point");
  }
  const Vec g = f.gradient(x.coords());
  if (std::abs(g.dot(a.direction().conjugate())) > 1e-10 * g.norm() * a.direction().norm()) {
    throw ContractError("ricci: vector is not tangent to the hypersurface");
  }
}

}  // namespace

Vec gradient(const HomogeneousPolynomial& f, const Vec& x) { return f.gradient(x); }

TangentFrame tangent_frame(const HomogeneousPolynomial& f, const ProjectivePoint& x) {
  const Vec& z = x.coords();
  require_on_variety(f, z);
  const Vec g = f.gradient(z);
  Vec y = g.conjugate();
  y -= z * z.dot(y);
  const double yn = y.norm();
  if (!(yn >= kSingularTol * f.coefficient_norm())) {
    throw SingularityError("tangent_frame: singular point " + describe(x));
  }
  y /= yn;
  const int n = static_cast<int>(z.size());
  Mat basis(n, 2);
  basis.col(0) = z;
  basis.col(1) = y;
  Eigen::HouseholderQR<Mat> qr(basis);
  const Mat q = qr.householderQ();
  return TangentFrame{x, q.rightCols(n - 2), y};
}

Mat frame_gram(const Mat& sigma, const Vec& x, const Mat& vectors) {
  const Vec y = sigma * x;
  const Mat a = sigma * vectors;
  const double yy = y.squaredNorm();
  const Vec ay = a.adjoint() * y;  // (v_j^* y)
  // h(a_j, a_k) = (|y|^2 a_k^* a_j - (y^* a_j)(a_k^* y)) / |y|^4
  Mat star = (yy * (a.adjoint() * a) - ay * ay.adjoint()) / (yy * yy);
  return star.conjugate();
}

InducedMetric induced_metric(const TangentFrame& frame, const GroupElement& sigma) {
  return {frame_gram(sigma.matrix(), frame.base.coords(), frame.vectors)};
}

InducedMetric induced_metric(const TangentFrame& frame) {
  const int n = static_cast<int>(frame.base.coords().size());
  return {frame_gram(Mat::Identity(n, n), frame.base.coords(), frame.vectors)};
}

double xi(const HomogeneousPolynomial& f, const TangentFrame& frame,
          const GroupElement& sigma) {
  const Vec& x = frame.base.coords();
  const int m = static_cast<int>(frame.vectors.cols());
  const cplx yf = f.gradient(x).transpose() * frame.transversal;
  if (!(std::abs(yf) >= 1e-12 * f.coefficient_norm())) {
    throw SingularityError("xi: Y(f) vanishes at " + describe(frame.base));
  }
  Mat full(x.size(), m + 1);
  full << frame.vectors, frame.transversal;
  const Mat& s = sigma.matrix();
  const double det_m = frame_gram(s, x, frame.vectors).determinant().real();
  const double det_m1 = frame_gram(s, x, full).determinant().real();
  const double sx = (s * x).squaredNorm();
  return std::norm(yf) / std::pow(sx, f.degree()) * det_m /
         (static_cast<double>(m + 1) * det_m1);
}

double xi(const HomogeneousPolynomial& f, const ProjectivePoint& x,
          const GroupElement& sigma) {
  return xi(f, tangent_frame(f, x), sigma);
}

double log_xi(const HomogeneousPolynomial& f, const Vec& z) {
  const int m = f.n_vars() - 2;
  return std::log(f.gradient(z).squaredNorm()) -
         static_cast<double>(f.degree() - 1) * std::log(z.squaredNorm()) -
         std::log(static_cast<double>(m + 1));
}

Vec holomorphic_curve_point(const HomogeneousPolynomial& f, const Vec& x, const Vec& n,
                            const Vec& v, cplx s) {
  const Vec p = x + s * v;
  cplx t = 0.0;
  Vec z = p;
  Vec g;
  for (int it = 0; it < 10; ++it) {
    const cplx val = f.value_and_gradient(z, g);
    const cplx slope = g.transpose() * n;
    if (slope == cplx(0.0)) break;
    const cplx step = val / slope;
    t -= step;
    z = p + t * n;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(t))) {
      if (f.relative_value(z) <= 1e-12) return z;
    }
  }
  if (f.relative_value(z) <= 1e-12) return z;
  throw ConvergenceError("Newton corrector did not return to the hypersurface near " +
                         describe(ProjectivePoint(x)));
}

double curve_laplacian(const HomogeneousPolynomial& f, const Vec& x, const Vec& v,
                       const std::function<double(const Vec&)>& u, double h) {
  const Vec n = f.gradient(x).conjugate();
  const double u0 = u(x);
  auto stencil = [&](double step) {
    double sum = -4.0 * u0;
    const cplx dirs[4] = {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)};
    for (cplx s : dirs) sum += u(holomorphic_curve_point(f, x, n, v, s));
    return sum / (4.0 * step * step);
  };
  const double coarse = stencil(h);
  const double fine = stencil(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

namespace {

// Hermitian matrix of ddbar log xi on the given tangent vectors.
Mat log_xi_hessian(const HomogeneousPolynomial& f, const Vec& x, const Mat& vecs) {
  const int k = static_cast<int>(vecs.cols());
  auto u = [&](const Vec& z) { return log_xi(f, z); };
  auto q = [&](const Vec& v) { return curve_laplacian(f, x, v, u); };
  std::vector<double> diag(k);
  for (int j = 0; j < k; ++j) diag[j] = q(vecs.col(j));
  Mat h(k, k);
  for (int j = 0; j < k; ++j) {
    h(j, j) = diag[j];
    for (int l = j + 1; l < k; ++l) {
      const double re = 0.5 * (q(vecs.col(j) + vecs.col(l)) - diag[j] - diag[l]);
      const double im =
          0.5 * (q(vecs.col(j) + cplx(0, 1) * vecs.col(l)) - diag[j] - diag[l]);
      h(j, l) = cplx(re, im);
      h(l, j) = cplx(re, -im);
    }
  }
  return h;
}

}  // namespace

cplx ricci(const HomogeneousPolynomial& f, const ProjectivePoint& x,
           const TangentVector& a, const TangentVector& b) {
  require_on_variety(f, x.coords());
  require_tangent(f, x, a);
  require_tangent(f, x, b);
  const int m = f.n_vars() - 2;
  Mat vecs(x.coords().size(), 2);
  vecs.col(0) = a.direction();
  vecs.col(1) = b.direction();
  const Mat h = log_xi_hessian(f, x.coords(), vecs);
  return static_cast<double>(m + 2 - f.degree()) * fs_form(x, a, b) - h(0, 1);
}

Mat ricci_matrix(const HomogeneousPolynomial& f, const TangentFrame& frame) {
  const Mat g = induced_metric(frame).gram;
  const Mat h = log_xi_hessian(f, frame.base.coords(), frame.vectors);
  return static_cast<double>(f.n_vars() - f.degree()) * g - h;
}

double scalar_curvature(const HomogeneousPolynomial& f, const ProjectivePoint& x) {
  const TangentFrame frame = tangent_frame(f, x);
  const Mat g = induced_metric(frame).gram;
  const Mat r = ricci_matrix(f, frame);
  // G(j,k) = g_{j kbar}; the contraction g^{j kbar} R_{j kbar} is tr(G^{-T} R)
  return (g.transpose().inverse() * r).trace().real();
}

}  // namespace kahler
