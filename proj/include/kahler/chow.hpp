#pragma once

// The Chow norm of a hypersurface (its defining polynomial is its Chow form),
// the # seminorm, and the verifiers of the two identities relating them to
// F0 and to the Mabuchi energy.

#include <string>

#include "kahler/energies.hpp"
#include "kahler/polynomial.hpp"
#include "kahler/sampler.hpp"

namespace kahler {

struct NormReport {
  MCEstimate log_norm_sq;
  std::string kind;  // "chow" or "sharp"
  double D = 1.0;
  int m = 0;
  int d = 1;
};

/// log ||f^sigma||^2 = (1/D) int_{P^{m+1}} log(|f(sigma^{-1} z)|^2 / |z|^{2d}).
NormReport chow_norm(const HomogeneousPolynomial& f, const GroupElement& sigma,
                     const SeededStream& stream, long n);

/// Chow-norm log-ratio log ||f^sigma||^2 - log ||f||^2 with common random
/// numbers for the two terms.
MCEstimate chow_log_ratio(const HomogeneousPolynomial& f, const GroupElement& sigma,
                          const SeededStream& stream, long n);

struct SharpParts {
  MCEstimate xi_term;    // (1/V) int_Z log xi_sigma sigma^* omega^m
  MCEstimate chow_term;  // (1/D) int log(|f^sigma|^2 / |z|^{2d})
  double c1 = 0.0;       // weight of the xi term (integral = V * mean)
  double c2 = 0.0;
};

/// log ||f^sigma||_#^2 for a hypersurface of degree d >= 2.
NormReport sharp_seminorm(const HomogeneousPolynomial& f, const GroupElement& sigma,
                          const SeededStream& stream, long n_lines, long n_ambient);

/// -V(m+1) F0(sigma) against log ||sigma f||^2 / ||f||^2, independent seeds.
IdentityReport theorem5_check(const HomogeneousPolynomial& f, const GroupElement& sigma,
                              const SeededStream& lhs_stream, long n_lines,
                              const SeededStream& rhs_stream, long n_ambient);

/// Mabuchi energy against (D(m+2)(d-1) / V(m+1)) log ||sigma f||_#^2 / ||f||_#^2.
IdentityReport theorem6_check(const HomogeneousPolynomial& f, const GroupElement& sigma,
                              const SeededStream& lhs_stream, long n_lines,
                              const SeededStream& rhs_stream, long n_rhs_lines,
                              long n_ambient);

/// Mean over Haar k-planes Z of tr(Z^* (c + c^*) Z); zero for traceless c.
MCEstimate grassmannian_balance_test(int n_dim, int k, const Mat& c,
                                     const SeededStream& stream, long n);

}  // namespace kahler
