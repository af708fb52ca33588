#pragma once

// Test-side reference computations, written independently of src/.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "kahler/projlin.hpp"

namespace oracle {

using kahler::cplx;
using kahler::Mat;
using kahler::Vec;

// Mixed discriminant by column mixing:
// D(A_1..A_m) = (1/m!) sum over permutations p of det[col_j(A_{p(j)})].
inline cplx mixed_discriminant(const std::vector<Mat>& a) {
  const int m = static_cast<int>(a.size());
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  cplx total = 0.0;
  double count = 0.0;
  do {
    Mat c(m, m);
    for (int j = 0; j < m; ++j) c.col(j) = a[p[j]].col(j);
    total += c.determinant();
    count += 1.0;
  } while (std::next_permutation(p.begin(), p.end()));
  return total / count;
}

// Composite Gauss-Legendre (5 nodes) on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 200) {
  static const double x[5] = {0.0, 0.5384693101056831, -0.5384693101056831,
                              0.9061798459386640, -0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) s += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return 0.5 * h * s;
}

// exp of a Hermitian matrix by scaling and squaring of the Taylor series.
inline Mat expm(const Mat& a) {
  int squarings = 0;
  double norm = a.norm();
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const Mat b = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

}  // namespace oracle
