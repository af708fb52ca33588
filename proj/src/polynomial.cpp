#include "kahler/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "kahler/error.hpp"

namespace kahler {

namespace {

std::map<Exponent, cplx> to_map(int n_vars,
                                const std::vector<HomogeneousPolynomial::Term>& terms) {
  std::map<Exponent, cplx> m;
  for (const auto& t : terms) {
    if (static_cast<int>(t.exponent.size()) != n_vars) {
      throw ContractError("polynomial: exponent length differs from n_vars");
    }
    m[t.exponent] += t.coefficient;
  }
  return m;
}

using Poly = std::map<Exponent, cplx>;

Poly multiply(const Poly& a, const Poly& b, int n_vars) {
  Poly out;
  Exponent e(n_vars);
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      for (int i = 0; i < n_vars; ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars, const std::vector<Term>& terms)
    : HomogeneousPolynomial(n_vars, to_map(n_vars, terms)) {}

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars,
                                             const std::map<Exponent, cplx>& terms)
    : n_vars_(n_vars) {
  if (n_vars < 2) throw ContractError("polynomial: need at least two variables");
  int degree = -1;
  double norm2 = 0.0;
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != n_vars) {
      throw ContractError("polynomial: exponent length differs from n_vars");
    }
    int s = 0;
    for (int k : e) {
      if (k < 0) throw ContractError("polynomial: negative exponent");
      s += k;
    }
    if (degree < 0) degree = s;
    if (s != degree) throw ContractError("polynomial: terms of different degree");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ContractError("polynomial: non-finite coefficient");
    }
    if (c != cplx(0.0)) {
      terms_.push_back({e, c});
      norm2 += std::norm(c);
    }
  }
  if (terms_.empty()) throw ContractError("polynomial: all coefficients are zero");
  if (degree < 1) throw ContractError("polynomial: degree must be at least 1");
  degree_ = degree;
  coeff_norm_ = std::sqrt(norm2);
}

HomogeneousPolynomial HomogeneousPolynomial::fermat(int n_vars, int degree) {
  std::vector<Term> terms;
  for (int i = 0; i < n_vars; ++i) {
    Exponent e(n_vars, 0);
    e[i] = degree;
    terms.push_back({e, 1.0});
  }
  return HomogeneousPolynomial(n_vars, terms);
}

HomogeneousPolynomial HomogeneousPolynomial::linear(const Vec& coefficients) {
  const int n = static_cast<int>(coefficients.size());
  std::vector<Term> terms;
  for (int i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = 1;
    terms.push_back({e, coefficients(i)});
  }
  return HomogeneousPolynomial(n, terms);
}

void HomogeneousPolynomial::powers(const Vec& z, std::vector<cplx>& pw) const {
  // pw[i * (d + 1) + k] = z_i^k
  const int stride = degree_ + 1;
  pw.resize(static_cast<std::size_t>(n_vars_ * stride));
  for (int i = 0; i < n_vars_; ++i) {
    cplx acc = 1.0;
    for (int k = 0; k <= degree_; ++k) {
      pw[i * stride + k] = acc;
      acc *= z(i);
    }
  }
}

cplx HomogeneousPolynomial::operator()(const Vec& z) const {
  if (z.size() != n_vars_) throw ContractError("polynomial: wrong point dimension");
  std::vector<cplx> pw;
  powers(z, pw);
  const int stride = degree_ + 1;
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    cplx v = t.coefficient;
    for (int i = 0; i < n_vars_; ++i) v *= pw[i * stride + t.exponent[i]];
    sum += v;
  }
  return sum;
}

cplx HomogeneousPolynomial::value_and_gradient(const Vec& z, Vec& grad) const {
  if (z.size() != n_vars_) throw ContractError("polynomial: wrong point dimension");
  std::vector<cplx> pw;
  powers(z, pw);
  const int stride = degree_ + 1;
  grad = Vec::Zero(n_vars_);
  cplx sum = 0.0;
  for (const auto& t : terms_) {
    cplx v = t.coefficient;
    for (int i = 0; i < n_vars_; ++i) v *= pw[i * stride + t.exponent[i]];
    sum += v;
    for (int j = 0; j < n_vars_; ++j) {
      const int ej = t.exponent[j];
      if (ej == 0) continue;
      cplx g = t.coefficient * static_cast<double>(ej);
      for (int i = 0; i < n_vars_; ++i) {
        g *= pw[i * stride + (i == j ? ej - 1 : t.exponent[i])];
      }
      grad(j) += g;
    }
  }
  return sum;
}

Vec HomogeneousPolynomial::gradient(const Vec& z) const {
  Vec g;
  value_and_gradient(z, g);
  return g;
}

Mat HomogeneousPolynomial::hessian(const Vec& z) const {
  if (z.size() != n_vars_) throw ContractError("polynomial: wrong point dimension");
  std::vector<cplx> pw;
  powers(z, pw);
  const int stride = degree_ + 1;
  Mat h = Mat::Zero(n_vars_, n_vars_);
  Exponent e;
  for (const auto& t : terms_) {
    for (int j = 0; j < n_vars_; ++j) {
      for (int k = 0; k < n_vars_; ++k) {
        e = t.exponent;
        cplx c = t.coefficient * static_cast<double>(e[j]);
        if (e[j] == 0) continue;
        --e[j];
        c *= static_cast<double>(e[k]);
        if (e[k] == 0) continue;
        --e[k];
        for (int i = 0; i < n_vars_; ++i) c *= pw[i * stride + e[i]];
        h(j, k) += c;
      }
    }
  }
  return h;
}

std::vector<cplx> HomogeneousPolynomial::restrict_to_line(const Vec& p,
                                                          const Vec& q) const {
  const int d = degree_;
  // binom[i][k] holds the coefficients of (p_i + s q_i)^k
  std::vector<std::vector<std::vector<cplx>>> binom(n_vars_);
  for (int i = 0; i < n_vars_; ++i) {
    binom[i].resize(d + 1);
    binom[i][0] = {1.0};
    for (int k = 1; k <= d; ++k) {
      const auto& prev = binom[i][k - 1];
      std::vector<cplx> next(prev.size() + 1, 0.0);
      for (std::size_t a = 0; a < prev.size(); ++a) {
        next[a] += prev[a] * p(i);
        next[a + 1] += prev[a] * q(i);
      }
      binom[i][k] = std::move(next);
    }
  }
  std::vector<cplx> out(d + 1, 0.0);
  std::vector<cplx> acc, tmp;
  for (const auto& t : terms_) {
    acc.assign(1, t.coefficient);
    for (int i = 0; i < n_vars_; ++i) {
      const auto& f = binom[i][t.exponent[i]];
      if (f.size() == 1) {
        for (auto& a : acc) a *= f[0];
        continue;
      }
      tmp.assign(acc.size() + f.size() - 1, 0.0);
      for (std::size_t a = 0; a < acc.size(); ++a) {
        for (std::size_t b = 0; b < f.size(); ++b) tmp[a + b] += acc[a] * f[b];
      }
      acc.swap(tmp);
    }
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] += acc[k];
  }
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::compose(const Mat& m) const {
  if (m.rows() != n_vars_ || m.cols() != n_vars_) {
    throw ContractError("compose: matrix size must equal n_vars");
  }
  // powers of the linear forms L_i(z) = sum_j m(i, j) z_j
  std::vector<std::vector<Poly>> lin_pow(n_vars_);
  for (int i = 0; i < n_vars_; ++i) {
    Poly one;
    one[Exponent(n_vars_, 0)] = 1.0;
    Poly li;
    for (int j = 0; j < n_vars_; ++j) {
      if (m(i, j) == cplx(0.0)) continue;
      Exponent e(n_vars_, 0);
      e[j] = 1;
      li[e] = m(i, j);
    }
    lin_pow[i].push_back(one);
    for (int k = 1; k <= degree_; ++k) {
      lin_pow[i].push_back(multiply(lin_pow[i][k - 1], li, n_vars_));
    }
  }
  Poly out;
  for (const auto& t : terms_) {
    Poly acc;
    acc[Exponent(n_vars_, 0)] = t.coefficient;
    for (int i = 0; i < n_vars_; ++i) {
      if (t.exponent[i] == 0) continue;
      acc = multiply(acc, lin_pow[i][t.exponent[i]], n_vars_);
    }
    for (const auto& [e, c] : acc) out[e] += c;
  }
  return HomogeneousPolynomial(n_vars_, out);
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(cplx lambda) const {
  std::vector<Term> t = terms_;
  for (auto& term : t) term.coefficient *= lambda;
  return HomogeneousPolynomial(n_vars_, t);
}

double HomogeneousPolynomial::relative_value(const Vec& z) const {
  return std::abs((*this)(z)) / (coeff_norm_ * std::pow(z.norm(), degree_));
}

std::string HomogeneousPolynomial::to_string() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
       << t.coefficient.imag() << "i)";
    for (int i = 0; i < n_vars_; ++i) {
      if (t.exponent[i] == 0) continue;
      os << "*z" << i;
      if (t.exponent[i] > 1) os << "^" << t.exponent[i];
    }
  }
  return os.str();
}

}  // namespace kahler
