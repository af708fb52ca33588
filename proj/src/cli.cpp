#include "kahler/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kahler/bundles.hpp"
#include "kahler/chow.hpp"
#include "kahler/energies.hpp"
#include "kahler/error.hpp"
#include "kahler/parallel.hpp"
#include "kahler/registry.hpp"

namespace kahler {

namespace {

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kCommands{"energy", "profile", "verify", "balance", "sample"};
const std::vector<std::string> kChecks{"theorem2",    "theorem5",  "theorem6",
                                       "grassmannian", "convexity", "criticality"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

void RunConfig::validate() const {
  if (!contains(kCommands, command)) {
    throw ConfigError("unknown command '" + command +
                      "' (expected energy, profile, verify, balance or sample)");
  }
  if (!registry.empty() && !has_variety(registry) && !has_bundle(registry)) {
    throw ConfigError("unknown registry name '" + registry + "'");
  }
  if (!registry.empty() && !poly_path.empty()) {
    throw ConfigError("give either a registry name or a polynomial file, not both");
  }
  for (const auto* path : {&poly_path, &sigma_path}) {
    if (!path->empty() && !std::filesystem::exists(*path)) {
      throw ConfigError("file '" + *path + "' does not exist");
    }
  }
  if (samples < 2) throw ConfigError("samples must be at least 2");
  if (ambient_samples < 0) throw ConfigError("ambient_samples must be nonnegative");
  if (t_grid.empty()) throw ConfigError("t_grid must not be empty");
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) throw ConfigError("t_grid must be strictly increasing");
  }
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (max_iters < 0) throw ConfigError("max_iters must be nonnegative");
  if (threads < 0) throw ConfigError("threads must be nonnegative");
  for (const auto& c : checks) {
    if (!contains(kChecks, c)) throw ConfigError("unknown check '" + c + "'");
  }
}

json RunConfig::to_json() const {
  return {{"command", command},
          {"registry", registry},
          {"poly", poly_path},
          {"sigma_file", sigma_path},
          {"direction", direction},
          {"t", t},
          {"t_grid", t_grid},
          {"energies", energies},
          {"checks", checks},
          {"samples", samples},
          {"ambient_samples", ambient_samples},
          {"seed", seed},
          {"tolerance", tolerance},
          {"max_iters", max_iters},
          {"out", out}};
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "registry") c.registry = value.get<std::string>();
      else if (key == "poly") c.poly_path = value.get<std::string>();
      else if (key == "sigma_file") c.sigma_path = value.get<std::string>();
      else if (key == "direction") c.direction = value.get<std::string>();
      else if (key == "t") c.t = value.get<double>();
      else if (key == "t_grid") c.t_grid = value.get<std::vector<double>>();
      else if (key == "energies") c.energies = value.get<std::vector<std::string>>();
      else if (key == "checks") c.checks = value.get<std::vector<std::string>>();
      else if (key == "samples") c.samples = value.get<long>();
      else if (key == "ambient_samples") c.ambient_samples = value.get<long>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "tolerance") c.tolerance = value.get<double>();
      else if (key == "max_iters") c.max_iters = value.get<int>();
      else if (key == "threads") c.threads = value.get<int>();
      else if (key == "out") c.out = value.get<std::string>();
      else throw ConfigError("config: unknown key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

namespace {

struct Target {
  std::optional<Variety> variety;
  std::optional<BundleChart> bundle;
  std::string name;
};

Target resolve_target(const RunConfig& c, const std::string& fallback) {
  Target t;
  if (!c.poly_path.empty()) {
    t.variety = Variety::hypersurface(read_polynomial(c.poly_path));
    t.name = c.poly_path;
    return t;
  }
  const std::string name = c.registry.empty() ? fallback : c.registry;
  t.name = name;
  if (has_bundle(name)) {
    t.bundle = registry_bundle(name);
  } else {
    t.variety = registry_variety(name);
  }
  return t;
}

int group_size(const Target& t) {
  return t.bundle ? t.bundle->n_sections : t.variety->ambient_dim() + 1;
}

GeodesicDirection resolve_direction(const RunConfig& c, int size) {
  if (c.direction == "diag" || c.direction.rfind("random:", 0) == 0) {
    return named_direction(c.direction, size);
  }
  if (!std::filesystem::exists(c.direction)) {
    throw ConfigError("direction '" + c.direction + "' is neither a name nor a file");
  }
  const Mat m = read_matrix(c.direction);
  if (m.rows() != size || m.cols() != size) {
    throw ConfigError("direction matrix has the wrong size");
  }
  try {
    return GeodesicDirection(m);
  } catch (const ContractError& e) {
    throw ConfigError(std::string(c.direction) + ": " + e.what());
  }
}

GroupElement resolve_base(const RunConfig& c, int size) {
  if (c.sigma_path.empty()) return GroupElement::identity(size);
  const Mat m = read_matrix(c.sigma_path);
  if (m.rows() != size || m.cols() != size) {
    throw ConfigError("sigma matrix has the wrong size");
  }
  return GroupElement::normalized(m);
}

long ambient_count(const RunConfig& c) {
  return c.ambient_samples > 0 ? c.ambient_samples : 4 * c.samples;
}

json l_report(const BundleBatch& batch, const GroupElement& sigma) {
  return {{"functional", "L"},
          {"estimate", to_json(donaldson_L(batch, sigma))},
          {"sigma", matrix_to_json(sigma.matrix())},
          {"bundle", batch.chart().name},
          {"c", batch.chart().c}};
}

json cmd_energy(const RunConfig& c) {
  const Target target = resolve_target(c, "fermat_conic");
  const int n = group_size(target);
  const GroupElement sigma = exp_path(resolve_direction(c, n), c.t, resolve_base(c, n));
  json reports = json::array();
  if (target.bundle) {
    const BundleBatch batch(*target.bundle, {c.seed, 1}, c.samples);
    for (const auto& name : c.energies) {
      if (name != "L") throw ConfigError("functional '" + name + "' is not defined on bundles");
      reports.push_back(l_report(batch, sigma));
    }
    return reports;
  }
  const FrozenBatch batch(*target.variety, {c.seed, 1}, c.samples);
  for (const auto& name : c.energies) {
    if (name == "L") throw ConfigError("functional L needs a bundle");
    reports.push_back(to_json(energy(name, batch, sigma)));
  }
  return reports;
}

// Second differences of sign * values; convex when none is below
// -3 times its propagated standard error.
json convexity_summary(const EnergyProfile& p, double sign) {
  double worst = 0.0;
  bool convex = true;
  for (std::size_t k = 1; k + 1 < p.values.size(); ++k) {
    const double dd =
        sign * (p.values[k + 1].value - 2.0 * p.values[k].value + p.values[k - 1].value);
    const double se = std::sqrt(std::pow(p.values[k + 1].std_error, 2) +
                                4.0 * std::pow(p.values[k].std_error, 2) +
                                std::pow(p.values[k - 1].std_error, 2));
    if (dd < -3.0 * se) convex = false;
    worst = std::min(worst, dd + 3.0 * se);
  }
  return {{"orientation", sign > 0 ? "+" : "-"}, {"convex", convex}, {"worst_margin", worst}};
}

json cmd_profile(const RunConfig& c) {
  const Target target = resolve_target(c, "fermat_conic");
  const int n = group_size(target);
  const GeodesicDirection dir = resolve_direction(c, n);
  const GroupElement base = resolve_base(c, n);
  const std::string name = c.energies.empty() ? std::string("F0") : c.energies.front();
  EnergyProfile p;
  if (target.bundle) {
    if (name != "L") throw ConfigError("functional '" + name + "' is not defined on bundles");
    const BundleBatch batch(*target.bundle, {c.seed, 1}, c.samples);
    p = {name, dir.matrix(), base.matrix(), c.t_grid, {}};
    for (double t : c.t_grid) p.values.push_back(donaldson_L(batch, exp_path(dir, t, base)));
  } else {
    const FrozenBatch batch(*target.variety, {c.seed, 1}, c.samples);
    p = profile(name, batch, dir, base, c.t_grid);
  }
  std::ostringstream table;
  write_profile(table, p);
  if (!c.out.empty()) {
    std::ofstream f(std::filesystem::path(c.out) / "profile.tsv");
    f << table.str();
  }
  json rows = json::array();
  for (std::size_t k = 0; k < p.t_grid.size(); ++k) {
    rows.push_back({{"t", p.t_grid[k]}, {"estimate", to_json(p.values[k])}});
  }
  // F0 is concave along geodesics; its negative (the Chow log-norm) is convex
  const double sign = name == "F0" ? -1.0 : 1.0;
  return json::array({{{"functional", name},
                       {"profile", rows},
                       {"table", table.str()},
                       {"convexity", convexity_summary(p, sign)}}});
}

json cmd_balance(const RunConfig& c, int& exit_code) {
  const Target target = resolve_target(c, "fermat_conic");
  const int n = group_size(target);
  const GroupElement start = exp_path(resolve_direction(c, n), c.t, resolve_base(c, n));
  json trace = json::array();
  std::ostringstream table;
  table.precision(17);
  table << "iteration\tresidual_norm\n";
  bool converged = false;
  json final_state;
  if (target.bundle) {
    const BundleBatch batch(*target.bundle, {c.seed, 1}, c.samples);
    for (const auto& s : bundle_balance_iterate(batch, start, c.max_iters, c.tolerance)) {
      trace.push_back(to_json(s));
      table << s.iteration << '\t' << s.residual_norm << '\n';
      converged = s.converged;
      final_state = to_json(s);
    }
  } else {
    const FrozenBatch batch(*target.variety, {c.seed, 1}, c.samples);
    const auto states = balance_iterate(batch, start, c.max_iters, c.tolerance);
    for (const auto& s : states) {
      trace.push_back(to_json(s));
      table << s.iteration << '\t' << s.residual_norm << '\n';
    }
    converged = states.back().converged;
    final_state = to_json(states.back());
    final_state["F0_start"] = to_json(f0_energy(batch, states.front().sigma).value);
    final_state["F0_final"] = to_json(f0_energy(batch, states.back().sigma).value);
  }
  if (!c.out.empty()) {
    std::ofstream f(std::filesystem::path(c.out) / "balance_trace.tsv");
    f << table.str();
  }
  // a zero iteration budget only echoes the initial state
  if (!converged && c.max_iters > 0) exit_code = kExitCheckFailed;
  return json::array({{{"trace", trace}, {"final", final_state}, {"converged", converged}}});
}

// -- verify ----------------------------------------------------------------

json identity_json(const IdentityReport& r, const std::string& target) {
  json j = to_json(r);
  j["target"] = target;
  return j;
}

json check_theorem2(const RunConfig& c, const std::vector<std::string>& names) {
  json out = json::array();
  for (const auto& name : names) {
    const BundleChart chart = registry_bundle(name);
    const GroupElement sigma =
        exp_path(GeodesicDirection::diagonal_pair(chart.n_sections), 0.3,
                 GroupElement::identity(chart.n_sections));
    out.push_back(identity_json(
        theorem2_check(chart, sigma, {c.seed, 21}, {c.seed + 1, 22}, c.samples), name));
  }
  return out;
}

json check_theorem5(const RunConfig& c, const std::vector<HomogeneousPolynomial>& polys,
                    const std::vector<std::string>& names, const std::vector<double>& ts) {
  json out = json::array();
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const int n = polys[k].n_vars();
    for (double t : ts) {
      const GroupElement sigma =
          exp_path(GeodesicDirection::diagonal_pair(n), t, GroupElement::identity(n));
      json j = identity_json(theorem5_check(polys[k], sigma, {c.seed, 51}, c.samples,
                                            {c.seed + 1, 52}, ambient_count(c)),
                             names[k]);
      j["t"] = t;
      out.push_back(j);
    }
  }
  return out;
}

json check_theorem6(const RunConfig& c, const std::vector<HomogeneousPolynomial>& polys,
                    const std::vector<std::string>& names, const std::vector<double>& ts) {
  json out = json::array();
  for (std::size_t k = 0; k < polys.size(); ++k) {
    const int n = polys[k].n_vars();
    for (double t : ts) {
      const GroupElement sigma =
          exp_path(GeodesicDirection::diagonal_pair(n), t, GroupElement::identity(n));
      json j = identity_json(theorem6_check(polys[k], sigma, {c.seed, 61}, c.samples,
                                            {c.seed + 1, 62}, c.samples, ambient_count(c)),
                             names[k]);
      j["t"] = t;
      out.push_back(j);
    }
  }
  return out;
}

json check_grassmannian(const RunConfig& c) {
  json out = json::array();
  for (int k = 1; k <= 5; ++k) {
    const GeodesicDirection dir = named_direction("random:" + std::to_string(k), 4);
    const MCEstimate e =
        grassmannian_balance_test(3, 2, dir.matrix(), {c.seed, 70 + static_cast<unsigned>(k)},
                                  4 * c.samples);
    out.push_back({{"check", "grassmannian"},
                   {"direction", "random:" + std::to_string(k)},
                   {"estimate", to_json(e)},
                   {"pass", std::abs(e.value) <= 3.0 * e.std_error}});
  }
  return out;
}

json check_convexity(const RunConfig& c) {
  json out = json::array();
  const std::vector<double> grid{-0.2, -0.1, 0.0, 0.1, 0.2};
  const FrozenBatch conic(registry_variety("fermat_conic"), {c.seed, 81}, c.samples);
  const BundleBatch line(o_minus_one_p1(), {c.seed, 82}, c.samples);
  for (int k = 1; k <= 5; ++k) {
    const std::string spec = "random:" + std::to_string(100 + k);
    {
      const GeodesicDirection dir = named_direction(spec, 3);
      const GroupElement s0 = GroupElement::identity(3);
      const MCEstimate f2 = f0_second_derivative(conic, s0, dir);
      const json fd = convexity_summary(profile("F0", conic, dir, s0, grid), -1.0);
      const bool pass = -f2.value >= -3.0 * f2.std_error && fd["convex"].get<bool>();
      out.push_back({{"check", "convexity"}, {"functional", "F0"}, {"direction", spec},
                     {"second_derivative", to_json(f2)}, {"fd", fd}, {"pass", pass}});
    }
    {
      const GeodesicDirection dir = named_direction(spec, 2);
      const GroupElement s0 = GroupElement::identity(2);
      const MCEstimate l2 = L_second_derivative(line, s0, dir);
      EnergyProfile p{"L", dir.matrix(), s0.matrix(), grid, {}};
      for (double t : grid) p.values.push_back(donaldson_L(line, exp_path(dir, t, s0)));
      const json fd = convexity_summary(p, 1.0);
      const bool pass = l2.value >= -3.0 * l2.std_error && fd["convex"].get<bool>();
      out.push_back({{"check", "convexity"}, {"functional", "L"}, {"direction", spec},
                     {"second_derivative", to_json(l2)}, {"fd", fd}, {"pass", pass}});
    }
  }
  return out;
}

json check_criticality(const RunConfig& c) {
  json out = json::array();
  // the gate is on both the residual and the derivative; the derivative carries
  // the scale of c and of the bundle constant, so balance a little further
  const double tol = 1e-8;
  const double balance_tol = 1e-10;
  {
    const FrozenBatch conic(registry_variety("fermat_conic"), {c.seed, 91}, c.samples);
    const GroupElement start = exp_path(GeodesicDirection::diagonal_pair(3), 0.2,
                                        GroupElement::identity(3));
    const auto trace = balance_iterate(conic, start, c.max_iters, balance_tol);
    double worst = 0.0;
    for (const char* spec : {"diag", "random:1", "random:2"}) {
      worst = std::max(worst, std::abs(f0_derivative(conic, trace.back().sigma,
                                                     named_direction(spec, 3)).value));
    }
    out.push_back({{"check", "criticality"}, {"target", "fermat_conic"},
                   {"iterations", trace.back().iteration},
                   {"residual_norm", trace.back().residual_norm},
                   {"max_abs_derivative", worst},
                   {"pass", trace.back().residual_norm < tol && worst < tol}});
  }
  {
    const BundleBatch line(o_minus_one_p1(), {c.seed, 92}, c.samples);
    const GroupElement start = exp_path(GeodesicDirection::diagonal_pair(2), 0.2,
                                        GroupElement::identity(2));
    const auto trace = bundle_balance_iterate(line, start, c.max_iters, balance_tol);
    double worst = 0.0;
    for (const char* spec : {"diag", "random:1", "random:2"}) {
      worst = std::max(worst, std::abs(L_derivative(line, trace.back().sigma,
                                                    named_direction(spec, 2)).value));
    }
    out.push_back({{"check", "criticality"}, {"target", "o_minus_1_p1"},
                   {"iterations", trace.back().iteration},
                   {"residual_norm", trace.back().residual_norm},
                   {"max_abs_derivative", worst},
                   {"pass", trace.back().residual_norm < tol && worst < tol}});
  }
  return out;
}

json cmd_verify(const RunConfig& c, int& exit_code) {
  std::vector<std::string> checks = c.checks;
  const bool targeted = !c.registry.empty() || !c.poly_path.empty();
  std::optional<Target> target;
  if (targeted) target = resolve_target(c, "");
  if (checks.empty()) {
    if (!targeted) checks = kChecks;
    else if (target->bundle) checks = {"theorem2"};
    else checks = {"theorem5", "theorem6"};
  }
  std::vector<double> ts{0.2, 0.5};
  if (c.t != 0.0) ts = {c.t};

  json results = json::array();
  bool any_fail = false, any_config = false, any_numeric = false;
  for (const auto& name : checks) {
    try {
      json r;
      if (name == "theorem2") {
        std::vector<std::string> names{"o_minus_1_p1", "taut_gr_1_2"};
        if (target && target->bundle) names = {target->name};
        r = check_theorem2(c, names);
      } else if (name == "theorem5" || name == "theorem6") {
        std::vector<HomogeneousPolynomial> polys;
        std::vector<std::string> names;
        if (target && target->variety) {
          polys.push_back(target->variety->polynomial());
          names.push_back(target->name);
        } else {
          names = name == "theorem5" ? std::vector<std::string>{"hyperplane_p2", "fermat_conic"}
                                     : std::vector<std::string>{"fermat_conic", "fermat_cubic"};
          for (const auto& n : names) polys.push_back(registry_polynomial(n));
        }
        r = name == "theorem5" ? check_theorem5(c, polys, names, ts)
                               : check_theorem6(c, polys, names, ts);
      } else if (name == "grassmannian") {
        r = check_grassmannian(c);
      } else if (name == "convexity") {
        r = check_convexity(c);
      } else {
        r = check_criticality(c);
      }
      for (const auto& item : r) {
        if (!item["pass"].get<bool>()) any_fail = true;
        results.push_back(item);
      }
    } catch (const ContractError& e) {
      any_config = true;
      results.push_back({{"check", name}, {"pass", false}, {"error", e.what()},
                         {"error_kind", "contract"}});
    } catch (const ConfigError& e) {
      any_config = true;
      results.push_back({{"check", name}, {"pass", false}, {"error", e.what()},
                         {"error_kind", "config"}});
    } catch (const NumericalError& e) {
      any_numeric = true;
      results.push_back({{"check", name}, {"pass", false}, {"error", e.what()},
                         {"error_kind", "numerical"}});
    }
  }
  if (any_config) exit_code = kExitConfigError;
  else if (any_numeric) exit_code = kExitNumericalError;
  else if (any_fail) exit_code = kExitCheckFailed;
  return results;
}

json cmd_sample(const RunConfig& c) {
  const Target target = resolve_target(c, "fermat_conic");
  if (target.bundle) throw ConfigError("sample: batch dumps are defined for varieties only");
  const FrozenBatch batch(*target.variety, {c.seed, 1}, c.samples);
  std::ostringstream dump;
  batch.samples().dump(dump);
  if (!c.out.empty()) {
    std::ofstream f(std::filesystem::path(c.out) / "batch.txt");
    f << dump.str();
  }
  return json::array({{{"points", batch.size()},
                       {"groups", batch.samples().n_groups()},
                       {"mass", to_json(batch_mass(batch.samples()))},
                       {"file", c.out.empty() ? "" : "batch.txt"}}});
}

}  // namespace

json execute(const RunConfig& config, int& exit_code) {
  config.validate();
  set_thread_count(config.threads);
  exit_code = kExitPass;
  if (!config.out.empty()) std::filesystem::create_directories(config.out);
  const auto start = std::chrono::steady_clock::now();
  json reports;
  if (config.command == "energy") reports = cmd_energy(config);
  else if (config.command == "profile") reports = cmd_profile(config);
  else if (config.command == "balance") reports = cmd_balance(config, exit_code);
  else if (config.command == "verify") reports = cmd_verify(config, exit_code);
  else reports = cmd_sample(config);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"tool", "kahler"},
                   {"version", kVersion},
                   {"config", config.to_json()},
                   {"threads", thread_count()},
                   {"wall_time_s", wall},
                   {"reports", reports},
                   {"exit_code", exit_code}};
  if (!config.out.empty()) {
    std::ofstream f(std::filesystem::path(config.out) / "manifest.json");
    f << manifest.dump(2) << '\n';
  }
  return manifest;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy functionals of projective hypersurfaces and toy bundles"};
  std::string config_path, command, poly, registry, sigma_file, direction, t_grid, energies,
      checks, out_dir;
  long samples = 0, ambient = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0, t = 0.0;
  int threads = -1, max_iters = -1;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--command", command, "energy | profile | verify | balance | sample");
  app.add_option("--poly", poly, "polynomial file (JSON)");
  app.add_option("--registry", registry, "built-in variety or bundle name");
  app.add_option("--sigma-file", sigma_file, "base group element (JSON matrix)");
  app.add_option("--direction", direction, "diag | random:<seed> | matrix file");
  app.add_option("--t", t, "sigma = exp(t c) sigma_file");
  app.add_option("--t-grid", t_grid, "comma-separated, strictly increasing");
  app.add_option("--energies", energies, "comma-separated: F0,I,J,mabuchi,L");
  app.add_option("--checks", checks, "comma-separated verify checks");
  app.add_option("--samples", samples, "lines (or points) per integral");
  app.add_option("--ambient-samples", ambient, "points on the ambient projective space");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--tolerance", tolerance, "balancing tolerance");
  app.add_option("--max-iters", max_iters, "balancing iteration budget");
  app.add_option("--threads", threads, "worker threads (0: all hardware threads)");
  app.add_option("--out", out_dir, "output directory");

  std::vector<std::string> argv_store{"kahler"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) parts.push_back(item);
    }
    return parts;
  };

  try {
    RunConfig config;
    if (!config_path.empty()) config = RunConfig::from_json(read_json_file(config_path));
    // flags win over the configuration file
    if (app.count("--command")) config.command = command;
    if (app.count("--poly")) config.poly_path = poly;
    if (app.count("--registry")) config.registry = registry;
    if (app.count("--sigma-file")) config.sigma_path = sigma_file;
    if (app.count("--direction")) config.direction = direction;
    if (app.count("--t")) config.t = t;
    if (app.count("--t-grid")) {
      config.t_grid.clear();
      for (const auto& p : split(t_grid)) {
        try {
          config.t_grid.push_back(std::stod(p));
        } catch (const std::exception&) {
          throw ConfigError("t-grid entry '" + p + "' is not a number");
        }
      }
    }
    if (app.count("--energies")) config.energies = split(energies);
    if (app.count("--checks")) config.checks = split(checks);
    if (app.count("--samples")) config.samples = samples;
    if (app.count("--ambient-samples")) config.ambient_samples = ambient;
    if (app.count("--seed")) config.seed = seed;
    if (app.count("--tolerance")) config.tolerance = tolerance;
    if (app.count("--max-iters")) config.max_iters = max_iters;
    if (app.count("--threads")) config.threads = threads;
    if (app.count("--out")) config.out = out_dir;

    int exit_code = kExitPass;
    const json manifest = execute(config, exit_code);
    out << manifest.dump(2) << '\n';
    return exit_code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ContractError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace kahler
