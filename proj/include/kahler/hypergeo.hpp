#pragma once

// Differential geometry of a smooth hypersurface X = {f = 0} in P^{m+1} with
// the restricted Fubini-Study metric. Frames are ambient vectors orthogonal to
// the (unit) base point; Hermitian matrices follow the convention
// G(j, k) = omega(v_j, conj(v_k)).

#include <functional>

#include "kahler/polynomial.hpp"
#include "kahler/projlin.hpp"

namespace kahler {

struct TangentFrame {
  ProjectivePoint base;
  Mat vectors;     // (N+1) x m, orthonormal, spanning T_x X
  Vec transversal; // unit, orthogonal to x and to T_x X
};

struct InducedMetric {
  Mat gram;  // m x m Hermitian positive definite
};

/// Holomorphic gradient of f at x.
Vec gradient(const HomogeneousPolynomial& f, const Vec& x);

/// Orthonormal frame of T_x X = ker(df) in x^perp plus the transversal
/// direction along the projection of conj(grad f).
TangentFrame tangent_frame(const HomogeneousPolynomial& f, const ProjectivePoint& x);

/// Gram matrix of the FS form at sigma x on the vectors sigma v_j.
Mat frame_gram(const Mat& sigma, const Vec& x, const Mat& vectors);

InducedMetric induced_metric(const TangentFrame& frame, const GroupElement& sigma);
InducedMetric induced_metric(const TangentFrame& frame);

/// xi_sigma(x) = |Y(f)|^2 / |sigma x|^{2d} * sigma^*omega^m(frame)
///               / sigma^*omega^{m+1}(frame, Y).
double xi(const HomogeneousPolynomial& f, const TangentFrame& frame,
          const GroupElement& sigma);
double xi(const HomogeneousPolynomial& f, const ProjectivePoint& x,
          const GroupElement& sigma);

/// log xi at sigma = I for an arbitrary representative z of a point of X:
/// log(|grad f(z)|^2 |z|^{2-2d} / (m+1)).
double log_xi(const HomogeneousPolynomial& f, const Vec& z);

/// Point of X near x + s v, reached along the fixed normal n = conj(grad f(x))
/// by Newton iteration; throws ConvergenceError if the corrector fails.
Vec holomorphic_curve_point(const HomogeneousPolynomial& f, const Vec& x, const Vec& n,
                            const Vec& v, cplx s);

/// d/ds d/dsbar of u(gamma(s)) at s = 0 along the holomorphic curve through x
/// with velocity v, by a five-point stencil with Richardson extrapolation.
/// u receives a (non-normalized) representative of the curve point.
double curve_laplacian(const HomogeneousPolynomial& f, const Vec& x, const Vec& v,
                       const std::function<double(const Vec&)>& u, double h = 1e-3);

/// Ric(omega)(A, conj(B)) = (m+2-d) omega(A, conj(B)) - ddbar log xi(A, conj(B)).
cplx ricci(const HomogeneousPolynomial& f, const ProjectivePoint& x,
           const TangentVector& a, const TangentVector& b);

/// Ricci matrix on the frame, R(j, k) = Ric(v_j, conj(v_k)).
Mat ricci_matrix(const HomogeneousPolynomial& f, const TangentFrame& frame);

/// tr(G^{-1} R); equals m(m+1) on a hyperplane.
double scalar_curvature(const HomogeneousPolynomial& f, const ProjectivePoint& x);

}  // namespace kahler
