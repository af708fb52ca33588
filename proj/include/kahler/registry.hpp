#pragma once

// Built-in examples addressed by name from the command line.

#include <string>
#include <vector>

#include "kahler/bundles.hpp"
#include "kahler/polynomial.hpp"
#include "kahler/variety.hpp"

namespace kahler {

/// hyperplane_p2, hyperplane_p3, fermat_conic, fermat_cubic.
std::vector<std::string> variety_names();
bool has_variety(const std::string& name);
HomogeneousPolynomial registry_polynomial(const std::string& name);
Variety registry_variety(const std::string& name);

/// o_minus_1_p1, taut_gr_1_2, taut_gr_2_4.
std::vector<std::string> bundle_names();
bool has_bundle(const std::string& name);
BundleChart registry_bundle(const std::string& name);

/// O(-1) in C^2 x P^1 with frame A(x) = x and tau = (z0, z1).
BundleChart o_minus_one_p1();
/// Tautological k-plane bundle over Gr(k, C^n) with Pluecker Gieseker data.
BundleChart tautological_bundle(int k, int n);

/// "diag" (diag(1, -1, 0, ...)) or "random:<seed>" (unit Frobenius norm).
GeodesicDirection named_direction(const std::string& spec, int size);

}  // namespace kahler
