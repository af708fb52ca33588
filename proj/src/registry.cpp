#include "kahler/registry.hpp"

#include <cmath>
#include <numbers>

#include "kahler/error.hpp"
#include "kahler/sampler.hpp"

namespace kahler {

std::vector<std::string> variety_names() {
  return {"hyperplane_p2", "hyperplane_p3", "fermat_conic", "fermat_cubic"};
}

bool has_variety(const std::string& name) {
  for (const auto& n : variety_names()) {
    if (n == name) return true;
  }
  return false;
}

HomogeneousPolynomial registry_polynomial(const std::string& name) {
  if (name == "hyperplane_p2") return HomogeneousPolynomial::linear(Vec::Ones(3));
  if (name == "hyperplane_p3") return HomogeneousPolynomial::linear(Vec::Ones(4));
  if (name == "fermat_conic") return HomogeneousPolynomial::fermat(3, 2);
  if (name == "fermat_cubic") return HomogeneousPolynomial::fermat(3, 3);
  throw ConfigError("unknown registry variety '" + name + "'");
}

Variety registry_variety(const std::string& name) {
  return Variety::hypersurface(registry_polynomial(name));
}

std::vector<std::string> bundle_names() { return {"o_minus_1_p1", "taut_gr_1_2", "taut_gr_2_4"}; }

bool has_bundle(const std::string& name) {
  for (const auto& n : bundle_names()) {
    if (n == name) return true;
  }
  return false;
}

namespace {

// Degree of Gr(k, C^n) in its Pluecker embedding.
double grassmannian_degree(int k, int n) {
  double deg = std::tgamma(k * (n - k) + 1.0);
  for (int i = 0; i < k; ++i) deg *= std::tgamma(i + 1.0) / std::tgamma(n - k + i + 1.0);
  return std::round(deg);
}

}  // namespace

BundleChart o_minus_one_p1() {
  BundleChart b;
  b.name = "o_minus_1_p1";
  b.base_k = 1;
  b.base_n = 1;
  b.base_dim = 1;
  b.rank = 1;
  b.n_sections = 2;
  b.frame = [](const Mat& w) -> Mat { return w.transpose(); };
  b.gieseker = GiesekerData{[](const Mat& w) -> Vec { return w.transpose(); },
                            GiesekerPoint{Mat::Identity(2, 2)}};
  // (2 pi n / r) times the degree of det E^* = O(1)
  b.c = 2.0 * std::numbers::pi;
  return b;
}

BundleChart tautological_bundle(int k, int n) {
  if (k < 1 || k >= n) throw ContractError("tautological bundle: need 1 <= k < n");
  BundleChart b;
  b.name = "taut_gr_" + std::to_string(k) + "_" + std::to_string(n);
  b.base_k = k;
  b.base_n = n - 1;
  b.base_dim = k * (n - k);
  b.rank = k;
  b.n_sections = n;
  b.frame = [](const Mat& w) -> Mat { return w.transpose(); };
  const Eigen::Index n_plk = static_cast<Eigen::Index>(binomial(n, k));
  b.gieseker = GiesekerData{[](const Mat& w) -> Vec { return pluecker(w); },
                            GiesekerPoint{Mat::Identity(n_plk, n_plk)}};
  b.c = 2.0 * std::numbers::pi * b.base_dim / k * grassmannian_degree(k, n);
  return b;
}

BundleChart registry_bundle(const std::string& name) {
  if (name == "o_minus_1_p1") return o_minus_one_p1();
  if (name == "taut_gr_1_2") return tautological_bundle(1, 2);
  if (name == "taut_gr_2_4") return tautological_bundle(2, 4);
  throw ConfigError("unknown registry bundle '" + name + "'");
}

GeodesicDirection named_direction(const std::string& spec, int size) {
  if (spec == "diag") return GeodesicDirection::diagonal_pair(size);
  const std::string prefix = "random:";
  if (spec.rfind(prefix, 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ConfigError("direction '" + spec + "': seed is not an integer");
    }
    Rng rng = SeededStream{seed, 0xD1}.chunk_rng(0);
    return GeodesicDirection(sample_traceless_hermitian(rng, size));
  }
  throw ConfigError("unknown direction '" + spec + "' (expected diag or random:<seed>)");
}

}  // namespace kahler
