#include "kahler/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kahler/error.hpp"
#include "kahler/sampler.hpp"

namespace kahler {

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

cplx parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("expected a complex number as [re, im], got " + j.dump());
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

HomogeneousPolynomial parse_polynomial(const json& j) {
  if (!j.is_object() || !j.contains("n_vars") || !j.contains("terms")) {
    throw ConfigError("polynomial: expected an object with 'n_vars' and 'terms'");
  }
  const int n_vars = j.at("n_vars").get<int>();
  std::vector<HomogeneousPolynomial::Term> terms;
  std::size_t index = 0;
  for (const auto& t : j.at("terms")) {
    if (!t.contains("exponent") || !t.contains("coefficient")) {
      throw ConfigError("polynomial term " + std::to_string(index) +
                        ": needs 'exponent' and 'coefficient'");
    }
    terms.push_back({t.at("exponent").get<Exponent>(), parse_complex(t.at("coefficient"))});
    ++index;
  }
  try {
    HomogeneousPolynomial f(n_vars, terms);
    Rng rng = SeededStream{0x5eed, 0}.chunk_rng(0);
    for (int k = 0; k < 8; ++k) {
      const Vec z = gaussian_vector(rng, n_vars);
      const cplx lhs = z.transpose() * f.gradient(z);
      const cplx rhs = static_cast<double>(f.degree()) * f(z);
      const double scale = f.coefficient_norm() * std::pow(z.norm(), f.degree()) *
                           static_cast<double>(f.degree() * terms.size());
      if (std::abs(lhs - rhs) > 1e-10 * scale) {
        throw ConfigError("polynomial fails the Euler identity check");
      }
    }
    return f;
  } catch (const ContractError& e) {
    throw ConfigError(std::string("polynomial: ") + e.what());
  }
}

HomogeneousPolynomial read_polynomial(const std::string& path) {
  return parse_polynomial(read_json_file(path));
}

json polynomial_to_json(const HomogeneousPolynomial& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    terms.push_back({{"exponent", t.exponent}, {"coefficient", complex_to_json(t.coefficient)}});
  }
  return {{"n_vars", f.n_vars()}, {"terms", terms}};
}

Mat parse_matrix(const json& j) {
  const json& rows = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  if (!rows.is_array() || rows.empty()) throw ConfigError("matrix: expected a list of rows");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows[0].size();
  Mat m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n_cols) {
      throw ConfigError("matrix: row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t k = 0; k < n_cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_complex(rows[i][k]);
    }
  }
  return m;
}

Mat read_matrix(const std::string& path) { return parse_matrix(read_json_file(path)); }

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return {{"matrix", rows}};
}

json to_json(const MCEstimate& e) {
  return {{"value", e.value},
          {"stderr", e.std_error},
          {"n_samples", e.n_samples},
          {"seed", e.seed}};
}

json to_json(const EnergyReport& r) {
  return {{"functional", r.name},
          {"estimate", to_json(r.value)},
          {"sigma", matrix_to_json(r.sigma)},
          {"variety", r.variety},
          {"normalization",
           {{"V", r.norm.V}, {"D", r.norm.D}, {"mu", r.norm.mu}, {"m", r.norm.m}, {"d", r.norm.d}}}};
}

json to_json(const IdentityReport& r) {
  return {{"check", r.name},
          {"lhs", r.lhs.value},
          {"lhs_stderr", r.lhs.std_error},
          {"rhs", r.rhs.value},
          {"rhs_stderr", r.rhs.std_error},
          {"gap", r.gap},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"seeds", {r.lhs.seed, r.rhs.seed}},
          {"n_samples", {r.lhs.n_samples, r.rhs.n_samples}}};
}

json to_json(const BalanceState& s) {
  return {{"iteration", s.iteration},
          {"residual_norm", s.residual_norm},
          {"converged", s.converged},
          {"sigma", matrix_to_json(s.sigma.matrix())}};
}

json to_json(const BundleBalanceState& s) {
  return {{"iteration", s.iteration},
          {"residual_norm", s.residual_norm},
          {"converged", s.converged},
          {"sigma", matrix_to_json(s.sigma.matrix())}};
}

void write_profile(std::ostream& os, const EnergyProfile& p) {
  os.precision(17);
  os << "t\tvalue\tstderr\n";
  for (std::size_t k = 0; k < p.t_grid.size(); ++k) {
    os << p.t_grid[k] << '\t' << p.values[k].value << '\t' << p.values[k].std_error << '\n';
  }
}

std::vector<ProfileRow> read_profile(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t\tvalue\tstderr") {
    throw ConfigError("profile: missing header row 't\\tvalue\\tstderr'");
  }
  std::vector<ProfileRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    ProfileRow r{};
    if (!(ss >> r.t >> r.value >> r.std_error)) {
      throw ConfigError("profile: malformed row at line " + std::to_string(lineno));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace kahler
