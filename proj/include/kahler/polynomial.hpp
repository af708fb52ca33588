#pragma once

#include <map>
#include <string>
#include <vector>

#include "kahler/projlin.hpp"

namespace kahler {

using Exponent = std::vector<int>;

/// Sparse homogeneous polynomial of degree d in n_vars = N + 1 variables.
class HomogeneousPolynomial {
 public:
  struct Term {
    Exponent exponent;
    cplx coefficient;
  };

  /// Validates: equal-length exponents summing to a common degree >= 1, at
  /// least one nonzero coefficient. Duplicate exponents are summed.
  HomogeneousPolynomial(int n_vars, const std::vector<Term>& terms);
  HomogeneousPolynomial(int n_vars, const std::map<Exponent, cplx>& terms);

  /// z_0^d + ... + z_N^d
  static HomogeneousPolynomial fermat(int n_vars, int degree);
  /// sum_i a_i z_i
  static HomogeneousPolynomial linear(const Vec& coefficients);

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const { return coeff_norm_; }

  cplx operator()(const Vec& z) const;
  Vec gradient(const Vec& z) const;
  /// Holomorphic Hessian d^2 f / dz_i dz_j.
  Mat hessian(const Vec& z) const;
  /// Value and gradient in one pass.
  cplx value_and_gradient(const Vec& z, Vec& grad) const;

  /// Coefficients c_0..c_d of s -> f(p + s q).
  std::vector<cplx> restrict_to_line(const Vec& p, const Vec& q) const;

  /// The polynomial z -> f(M z).
  HomogeneousPolynomial compose(const Mat& m) const;

  /// lambda * f
  HomogeneousPolynomial scaled(cplx lambda) const;

  /// Relative residual |f(z)| / (|f| |z|^d), scale invariant.
  double relative_value(const Vec& z) const;

  std::string to_string() const;

 private:
  void powers(const Vec& z, std::vector<cplx>& pw) const;

  int n_vars_;
  int degree_ = 0;
  double coeff_norm_ = 0.0;
  std::vector<Term> terms_;
};

}  // namespace kahler
