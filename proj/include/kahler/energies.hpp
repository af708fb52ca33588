#pragma once

// Energy functionals of the restricted Fubini-Study metric along the orbit of
// SL(N+1, C): F0, I, J, the Mabuchi energy, geodesic derivatives of F0 and
// the balancing flow. All integrals are normalized by V = vol(X) and
// evaluated on a FrozenBatch.

#include <string>
#include <vector>

#include "kahler/projlin.hpp"
#include "kahler/sampler.hpp"
#include "kahler/variety.hpp"
#include "kahler/wedge.hpp"

namespace kahler {

struct Normalization {
  double V = 1.0;   // vol(X)
  double D = 1.0;   // vol of the ambient P^{m+1}
  double mu = 0.0;  // average scalar curvature
  int m = 0;
  int d = 1;
};

Normalization normalization(const Variety& x);

struct EnergyReport {
  std::string name;
  MCEstimate value;
  Mat sigma;
  std::string variety;
  Normalization norm;
};

struct EnergyProfile {
  std::string name;
  Mat direction;
  Mat sigma0;
  std::vector<double> t_grid;
  std::vector<MCEstimate> values;
};

struct BalanceState {
  GroupElement sigma;
  Mat residual;          // Hermitian
  double residual_norm;  // operator norm of residual
  int iteration = 0;
  bool converged = false;
};

/// Pointwise quantities of sigma at one sample, shared by the integrands.
struct SigmaPoint {
  double phi;                 // log |sigma x|^2 / |x|^2
  Vec y;                      // sigma x
  Mat pushed;                 // sigma applied to the frame
  Mat gram;                   // pulled-back metric on the frame
  WedgePair pair;             // (identity, gram)
  std::vector<double> ratio;  // r_k = omega^k omega_sigma^{m-k} / omega^m
};

SigmaPoint sigma_point(const FrozenBatch& batch, std::size_t i, const Mat& sigma);

EnergyReport f0_energy(const FrozenBatch& batch, const GroupElement& sigma);
EnergyReport j_energy(const FrozenBatch& batch, const GroupElement& sigma);
EnergyReport i_energy(const FrozenBatch& batch, const GroupElement& sigma);
EnergyReport mabuchi_energy(const FrozenBatch& batch, const GroupElement& sigma);
/// Dispatch by name: "F0", "I", "J", "mabuchi".
EnergyReport energy(const std::string& name, const FrozenBatch& batch,
                    const GroupElement& sigma);

/// dF0/dt along exp(tc) sigma at t = 0.
MCEstimate f0_derivative(const FrozenBatch& batch, const GroupElement& sigma,
                         const GeodesicDirection& c);
/// d^2F0/dt^2 along exp(tc) sigma at t = 0 (never positive).
MCEstimate f0_second_derivative(const FrozenBatch& batch, const GroupElement& sigma,
                                const GeodesicDirection& c);

/// Residual of the balancing condition for sigma(X) on the batch: the
/// self-normalized moment matrix of sigma(X) minus I/(N+1).
BalanceState balanced_residual(const FrozenBatch& batch, const GroupElement& sigma);
/// Monte Carlo estimate (with errors) of the moment matrix of sigma(X).
MatrixEstimate moment_matrix(const FrozenBatch& batch, const GroupElement& sigma);

/// Fixed-point iteration sigma <- Q^{-1/2} sigma (det-normalized), Q = (N+1) M.
/// Returns the trace of states; the last one is the result.
std::vector<BalanceState> balance_iterate(const FrozenBatch& batch,
                                          const GroupElement& sigma_init, int max_iters,
                                          double tol);

/// Energy `name` at exp(t c) sigma0 for each t.
EnergyProfile profile(const std::string& name, const FrozenBatch& batch,
                      const GeodesicDirection& c, const GroupElement& sigma0,
                      const std::vector<double>& t_grid);

}  // namespace kahler
