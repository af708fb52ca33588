#pragma once

// Wedge products of (1,1)-forms evaluated on a frame. A form is given by its
// Hermitian matrix H(j, k) = eta(v_j, conj(v_k)) in a fixed frame; with the
// convention omega^K(A_1..A_K) = K! det omega(A_j, conj(A_k)), a product
// eta_1 ^ ... ^ eta_m evaluated on the frame, divided by omega^m, is the
// mixed discriminant D(H_1, ..., H_m) / det G, where D is normalized by
// D(H, ..., H) = det H.

#include <vector>

#include "kahler/projlin.hpp"

namespace kahler {

/// Simultaneous diagonalization of a pair of Hermitian positive definite
/// matrices: G = L L^*, L^{-1} G_sigma L^{-*} = U diag(lambda) U^*.
class WedgePair {
 public:
  /// Throws ContractError if either matrix is not positive definite.
  WedgePair(const Mat& g, const Mat& g_sigma);

  int dim() const { return static_cast<int>(lambda_.size()); }
  const Eigen::VectorXd& lambda() const { return lambda_; }

  /// r_k = (omega^k ^ omega_sigma^{m-k}) / omega^m, k = 0..m.
  std::vector<double> ratios() const;

  /// D(H, G x i, G_sigma x (m-1-i)) / det G for a Hermitian H.
  double linear_ratio(const Mat& h, int i) const;

  /// sum_{i=0}^{m-1} weight[i] * linear_ratio(h, i), sharing one transform of h.
  double linear_ratio_sum(const Mat& h, const std::vector<double>& weight) const;

  /// H expressed in the eigenbasis: U^* L^{-1} H L^{-*} U.
  Mat transform(const Mat& h) const;

 private:
  Mat l_inv_;
  Mat u_;
  Eigen::VectorXd lambda_;
};

/// e_0..e_n of the given numbers.
std::vector<double> elementary_symmetric(const Eigen::VectorXd& x);

/// Mixed-wedge ratios r_k of the pair (G, G_sigma).
std::vector<double> mixed_wedge_ratios(const Mat& g, const Mat& g_sigma);

/// Mixed discriminant by inclusion-exclusion over subsets:
/// D(A_1..A_m) = (1/m!) sum_S (-1)^{m-|S|} det(sum_{j in S} A_j).
cplx mixed_discriminant(const std::vector<Mat>& mats);

}  // namespace kahler
