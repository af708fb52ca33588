#pragma once

// Complex linear algebra on projective space and on SL(N+1, C): Fubini-Study
// forms, Kahler potentials of group elements, one-parameter subgroups and
// Pluecker coordinates.
//
// Normalization: omega = (i / 2 pi) d dbar log |z|^2, so that the projective
// space P^n has total volume 1. Hermitian forms are represented by their
// coefficient matrices omega(A, conj(B)), linear in A and antilinear in B.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kahler {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Tolerance used for Hermitian / traceless / orthogonality checks.
inline constexpr double kStructureTol = 1e-12;

/// A point of P^N, stored as a unit-norm representative.
class ProjectivePoint {
 public:
  /// Throws ContractError for a zero or non-finite vector.
  explicit ProjectivePoint(const Vec& coords);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }

  /// True when both represent the same point of P^N (up to tol).
  bool same_point(const ProjectivePoint& other, double tol = 1e-10) const;

 private:
  Vec coords_;
};

/// Traceless Hermitian generator c of the geodesic t -> exp(tc) sigma0.
class GeodesicDirection {
 public:
  /// Rejects (does not repair) matrices that fail the structure checks.
  explicit GeodesicDirection(const Mat& matrix);

  static GeodesicDirection zero(int size);
  /// diag(1, -1, 0, ..., 0)
  static GeodesicDirection diagonal_pair(int size);

  const Mat& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  GeodesicDirection scaled(double s) const;

 private:
  Mat matrix_;
};

/// An invertible element of GL(N+1, C); det_normalized marks SL members.
class GroupElement {
 public:
  explicit GroupElement(const Mat& matrix, bool det_normalized = false);

  static GroupElement identity(int size);
  /// Rescales by det^{-1/(N+1)} so that the result lies in SL(N+1, C).
  static GroupElement normalized(const Mat& matrix);

  const Mat& matrix() const { return matrix_; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  bool det_normalized() const { return det_normalized_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& rhs) const;

 private:
  Mat matrix_;
  bool det_normalized_;
};

/// Element of T_x P^N, represented by a vector orthogonal to the base point.
class TangentVector {
 public:
  /// Throws ContractError if direction is not orthogonal to base.
  TangentVector(const ProjectivePoint& base, const Vec& direction);

  /// Projects an arbitrary vector onto base^perp.
  static TangentVector project(const ProjectivePoint& base, const Vec& v);

  const ProjectivePoint& base() const { return base_; }
  const Vec& direction() const { return direction_; }

 private:
  ProjectivePoint base_;
  Vec direction_;
};

/// Fubini-Study Hermitian form at an arbitrary (not necessarily unit)
/// representative y, evaluated on ambient vectors a, b. Components of a and b
/// along y are ignored, so any lift of a tangent vector may be passed.
cplx fs_hermitian(const Vec& y, const Vec& a, const Vec& b);

/// omega(x)(A, conj(B)).
cplx fs_form(const ProjectivePoint& x, const TangentVector& a,
             const TangentVector& b);

/// (sigma^* omega)(x)(A, conj(B)) = omega(sigma x)(sigma A, conj(sigma B)).
cplx pullback_fs_form(const GroupElement& sigma, const ProjectivePoint& x,
                      const TangentVector& a, const TangentVector& b);

/// phi_sigma(x) = log(|sigma x|^2 / |x|^2).
double phi_sigma(const GroupElement& sigma, const ProjectivePoint& x);
double phi_sigma(const Mat& sigma, const Vec& x);

/// d/dt phi_{exp(tc) sigma}(x) at t = 0.
double phi_dot(const GroupElement& sigma, const GeodesicDirection& c,
               const ProjectivePoint& x);

/// exp(t c) for Hermitian c, via the Hermitian eigendecomposition.
Mat hermitian_exp(const Mat& c, double t);

/// exp(t c) sigma0.
GroupElement exp_path(const GeodesicDirection& c, double t,
                      const GroupElement& sigma0);

/// All k x k minors of the k x (N+1) matrix W, columns in lexicographic order.
Vec pluecker(const Mat& w);

/// Number of k-subsets of {0..n-1}.
long binomial(int n, int k);

/// Enumerates increasing index tuples of length k from {0..n-1}, lexicographic.
std::vector<std::vector<int>> index_subsets(int n, int k);

/// Operator 2-norm of a Hermitian matrix (largest |eigenvalue|).
double hermitian_norm(const Mat& h);

/// Inverse square root of a Hermitian positive definite matrix.
Mat hermitian_inv_sqrt(const Mat& q);

std::string describe(const ProjectivePoint& x);

}  // namespace kahler
