#include "kahler/projlin.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kahler/error.hpp"

namespace kahler {

namespace {

double frob(const Mat& m) { return m.norm(); }

void require_square(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractError(std::string(what) + ": matrix must be square and nonempty");
  }
}

}  // namespace

ProjectivePoint::ProjectivePoint(const Vec& coords) {
  const double norm = coords.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ContractError("ProjectivePoint: coordinates must be finite and nonzero");
  }
  coords_ = coords / norm;
}

bool ProjectivePoint::same_point(const ProjectivePoint& other, double tol) const {
  if (other.coords_.size() != coords_.size()) return false;
  return 1.0 - std::abs(coords_.dot(other.coords_)) <= tol;
}

GeodesicDirection::GeodesicDirection(const Mat& matrix) : matrix_(matrix) {
  require_square(matrix, "GeodesicDirection");
  const double scale = frob(matrix);
  if ((matrix - matrix.adjoint()).norm() > kStructureTol * scale) {
    throw ContractError("GeodesicDirection: matrix is not Hermitian");
  }
  if (std::abs(matrix.trace()) > kStructureTol * scale) {
    throw ContractError("GeodesicDirection: matrix is not traceless");
  }
}

GeodesicDirection GeodesicDirection::zero(int size) {
  return GeodesicDirection(Mat::Zero(size, size));
}

GeodesicDirection GeodesicDirection::diagonal_pair(int size) {
  if (size < 2) throw ContractError("diagonal_pair: size must be at least 2");
  Mat c = Mat::Zero(size, size);
  c(0, 0) = 1.0;
  c(1, 1) = -1.0;
  return GeodesicDirection(c);
}

GeodesicDirection GeodesicDirection::scaled(double s) const {
  return GeodesicDirection(matrix_ * s);
}

GroupElement::GroupElement(const Mat& matrix, bool det_normalized)
    : matrix_(matrix), det_normalized_(det_normalized) {
  require_square(matrix, "GroupElement");
  if (!matrix.allFinite()) throw ContractError("GroupElement: non-finite entries");
  Eigen::JacobiSVD<Mat> svd(matrix);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > 1e-14 * s(0))) {
    throw NumericalError("GroupElement: matrix is numerically singular");
  }
  if (det_normalized) {
    const cplx det = matrix.determinant();
    const double scale = std::pow(s(0), static_cast<double>(s.size()));
    if (std::abs(det - 1.0) > 1e-10 * std::max(1.0, scale)) {
      throw ContractError("GroupElement: det_normalized set but det != 1");
    }
  }
}

GroupElement GroupElement::identity(int size) {
  return GroupElement(Mat::Identity(size, size), true);
}

GroupElement GroupElement::normalized(const Mat& matrix) {
  require_square(matrix, "GroupElement::normalized");
  const cplx det = matrix.determinant();
  if (std::abs(det) == 0.0) throw NumericalError("GroupElement: singular matrix");
  const cplx root = std::pow(det, -1.0 / static_cast<double>(matrix.rows()));
  Mat m = matrix * root;
  // one polish step absorbs the rounding left by the complex root
  const cplx det2 = m.determinant();
  m *= std::pow(det2, -1.0 / static_cast<double>(matrix.rows()));
  return GroupElement(m, true);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(matrix_.inverse(), false);
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  return GroupElement(matrix_ * rhs.matrix_, false);
}

TangentVector::TangentVector(const ProjectivePoint& base, const Vec& direction)
    : base_(base), direction_(direction) {
  if (direction.size() != base.coords().size()) {
    throw ContractError("TangentVector: dimension mismatch");
  }
  const double overlap = std::abs(base.coords().dot(direction));
  if (overlap > kStructureTol * std::max(direction.norm(), 1.0)) {
    throw ContractError("TangentVector: direction not orthogonal to base point");
  }
}

TangentVector TangentVector::project(const ProjectivePoint& base, const Vec& v) {
  const Vec& x = base.coords();
  Vec d = v - x * x.dot(v);
  d -= x * x.dot(d);
  return TangentVector(base, d);
}

cplx fs_hermitian(const Vec& y, const Vec& a, const Vec& b) {
  const double yy = y.squaredNorm();
  // Eigen's dot is conjugate-linear in the first argument: u.dot(v) = u^* v
  return (yy * b.dot(a) - y.dot(a) * b.dot(y)) / (yy * yy);
}

namespace {

void require_same_base(const ProjectivePoint& x, const TangentVector& a,
                       const TangentVector& b) {
  if (!x.same_point(a.base(), 1e-12) || !x.same_point(b.base(), 1e-12)) {
    throw ContractError("fs_form: tangent vectors are based at a different point");
  }
}

}  // namespace

cplx fs_form(const ProjectivePoint& x, const TangentVector& a,
             const TangentVector& b) {
  require_same_base(x, a, b);
  return fs_hermitian(x.coords(), a.direction(), b.direction());
}

cplx pullback_fs_form(const GroupElement& sigma, const ProjectivePoint& x,
                      const TangentVector& a, const TangentVector& b) {
  require_same_base(x, a, b);
  const Mat& s = sigma.matrix();
  return fs_hermitian(s * x.coords(), s * a.direction(), s * b.direction());
}

double phi_sigma(const Mat& sigma, const Vec& x) {
  return std::log((sigma * x).squaredNorm() / x.squaredNorm());
}

double phi_sigma(const GroupElement& sigma, const ProjectivePoint& x) {
  return phi_sigma(sigma.matrix(), x.coords());
}

double phi_dot(const GroupElement& sigma, const GeodesicDirection& c,
               const ProjectivePoint& x) {
  const Vec y = sigma.matrix() * x.coords();
  const Mat u = c.matrix() + c.matrix().adjoint();
  return y.dot(u * y).real() / y.squaredNorm();
}

Mat hermitian_exp(const Mat& c, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(c);
  const Eigen::VectorXd ev = (eig.eigenvalues() * t).array().exp();
  return eig.eigenvectors() * ev.cast<cplx>().asDiagonal() *
         eig.eigenvectors().adjoint();
}

GroupElement exp_path(const GeodesicDirection& c, double t,
                      const GroupElement& sigma0) {
  if (c.size() != sigma0.size()) throw ContractError("exp_path: size mismatch");
  const Mat m = hermitian_exp(c.matrix(), t) * sigma0.matrix();
  if (sigma0.det_normalized()) {
    // det(exp(tc)) = exp(t tr c) = 1 up to rounding; re-normalize the residue
    return GroupElement::normalized(m);
  }
  return GroupElement(m, false);
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Vec pluecker(const Mat& w) {
  const int k = static_cast<int>(w.rows());
  const int n = static_cast<int>(w.cols());
  if (k < 1 || k > n) throw ContractError("pluecker: need 1 <= k <= N+1");
  Eigen::JacobiSVD<Mat> svd(w);
  const auto& s = svd.singularValues();
  if (!(s(k - 1) > 1e-12 * s(0))) {
    throw ContractError("pluecker: matrix is rank deficient");
  }
  const auto subsets = index_subsets(n, k);
  Vec out(static_cast<Eigen::Index>(subsets.size()));
  Mat minor(k, k);
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    for (int c = 0; c < k; ++c) minor.col(c) = w.col(subsets[j][c]);
    out(static_cast<Eigen::Index>(j)) = k == 1 ? minor(0, 0) : minor.determinant();
  }
  return out;
}

double hermitian_norm(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Mat hermitian_inv_sqrt(const Mat& q) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(q);
  const Eigen::VectorXd ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-14 * std::max(ev.maxCoeff(), 1e-300))) {
    throw NumericalError("inverse square root: matrix is not positive definite");
  }
  const Eigen::VectorXd d = ev.array().rsqrt();
  return eig.eigenvectors() * d.cast<cplx>().asDiagonal() *
         eig.eigenvectors().adjoint();
}

std::string describe(const ProjectivePoint& x) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) {
    if (i) os << ", ";
    os << x.coords()(i).real() << (x.coords()(i).imag() < 0 ? "" : "+")
       << x.coords()(i).imag() << "i";
  }
  os << "]";
  return os.str();
}

}  // namespace kahler
