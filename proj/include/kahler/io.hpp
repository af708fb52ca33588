#pragma once

// File formats. Polynomials, matrices and run configurations are JSON;
// complex numbers are [re, im] pairs. Profiles are tab-separated tables.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kahler/bundles.hpp"
#include "kahler/energies.hpp"
#include "kahler/polynomial.hpp"

namespace kahler {

using json = nlohmann::json;

/// Parses text, turning parse failures into ConfigError with line/column.
json parse_json(const std::string& text, const std::string& origin);
json read_json_file(const std::string& path);

cplx parse_complex(const json& j);
json complex_to_json(cplx z);

/// {"n_vars": 3, "terms": [{"exponent": [2, 0, 0], "coefficient": [1, 0]}, ...]}
/// Validated against the Euler identity at random points.
HomogeneousPolynomial parse_polynomial(const json& j);
HomogeneousPolynomial read_polynomial(const std::string& path);
json polynomial_to_json(const HomogeneousPolynomial& f);

/// {"matrix": [[[re, im], ...], ...]}, row-major.
Mat parse_matrix(const json& j);
Mat read_matrix(const std::string& path);
json matrix_to_json(const Mat& m);

json to_json(const MCEstimate& e);
json to_json(const EnergyReport& r);
json to_json(const IdentityReport& r);
json to_json(const BalanceState& s);
json to_json(const BundleBalanceState& s);

/// Header row "t\tvalue\tstderr", then one row per grid point.
void write_profile(std::ostream& os, const EnergyProfile& p);
struct ProfileRow {
  double t, value, std_error;
};
std::vector<ProfileRow> read_profile(std::istream& is);

}  // namespace kahler
