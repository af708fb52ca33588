#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kahler/cli.hpp"
#include "kahler/io.hpp"

using namespace kahler;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  json manifest() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kahler_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("energy at the identity is zero") {
  const Run r = run({"--command", "energy", "--registry", "fermat_conic", "--energies",
                     "F0,I,J,mabuchi", "--samples", "300"});
  REQUIRE(r.code == 0);
  const json m = r.manifest();
  CHECK(m["tool"] == "kahler");
  CHECK(m["reports"].size() == 4);
  for (const auto& rep : m["reports"]) CHECK(std::abs(rep["estimate"]["value"].get<double>()) < 1e-13);
}

TEST_CASE("configuration errors exit with status 2") {
  CHECK(run({"--command", "energy", "--registry", "no_such_variety"}).code == 2);
  CHECK(run({"--command", "profile", "--t-grid", "0.2,0.1"}).code == 2);
  CHECK(run({"--command", "fly"}).code == 2);
  CHECK(run({"--bogus-flag"}).code == 2);
  CHECK(run({"--command", "energy", "--poly", "/nonexistent.json"}).code == 2);
  CHECK(run({"--command", "energy", "--registry", "o_minus_1_p1", "--energies", "F0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("polynomial and sigma files") {
  const fs::path dir = scratch("files");
  {
    std::ofstream f(dir / "conic.json");
    f << R"({"n_vars": 3, "terms": [
      {"exponent": [2, 0, 0], "coefficient": [1, 0]},
      {"exponent": [0, 2, 0], "coefficient": [1, 0]},
      {"exponent": [0, 0, 2], "coefficient": [1, 0]}]})";
    std::ofstream s(dir / "sigma.json");
    s << R"({"matrix": [[[2,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[0.5,0]]]})";
    std::ofstream bad(dir / "bad.json");
    bad << R"({"n_vars": 3, "terms": [{"exponent": [2, 0, 0], "coefficient": [1, 0]},
                                      {"exponent": [1, 0, 0], "coefficient": [1, 0]}]})";
  }
  const Run a = run({"--command", "energy", "--poly", (dir / "conic.json").string(),
                     "--sigma-file", (dir / "sigma.json").string(), "--samples", "500"});
  const Run b = run({"--command", "energy", "--registry", "fermat_conic", "--sigma-file",
                     (dir / "sigma.json").string(), "--samples", "500"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.manifest()["reports"][0]["estimate"] == b.manifest()["reports"][0]["estimate"]);
  CHECK(run({"--command", "energy", "--poly", (dir / "bad.json").string()}).code == 2);
}

TEST_CASE("profile: single point equals energy, table round-trips") {
  const fs::path dir = scratch("profile");
  const Run e = run({"--command", "energy", "--registry", "fermat_conic", "--t", "0.3",
                     "--samples", "400"});
  const Run p = run({"--command", "profile", "--registry", "fermat_conic", "--t-grid", "0.3",
                     "--samples", "400"});
  REQUIRE(e.code == 0);
  REQUIRE(p.code == 0);
  CHECK(p.manifest()["reports"][0]["profile"][0]["estimate"] ==
        e.manifest()["reports"][0]["estimate"]);

  const Run q = run({"--command", "profile", "--registry", "fermat_conic", "--t-grid",
                     "-0.2,-0.1,0,0.1,0.2", "--samples", "2000", "--out", dir.string()});
  REQUIRE(q.code == 0);
  std::ifstream table(dir / "profile.tsv");
  const auto rows = read_profile(table);
  REQUIRE(rows.size() == 5);
  const json prof = q.manifest()["reports"][0];
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(rows[k].value == prof["profile"][k]["estimate"]["value"].get<double>());
  }
  // F0 is concave, so the convexity flag refers to -F0
  CHECK(prof["convexity"]["orientation"] == "-");
  CHECK(prof["convexity"]["convex"] == true);
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("balance: zero budget echoes the initial state; trace is persisted") {
  const fs::path dir = scratch("balance");
  const Run z = run({"--command", "balance", "--registry", "fermat_conic", "--t", "0.2",
                     "--max-iters", "0", "--samples", "300"});
  REQUIRE(z.code == 0);
  CHECK(z.manifest()["reports"][0]["trace"].size() == 1);

  const Run b = run({"--command", "balance", "--registry", "fermat_conic", "--t", "0.2",
                     "--samples", "1000", "--out", dir.string()});
  REQUIRE(b.code == 0);
  const json trace = b.manifest()["reports"][0]["trace"];
  for (std::size_t k = 1; k < trace.size(); ++k) {
    CHECK(trace[k]["residual_norm"].get<double>() < trace[k - 1]["residual_norm"].get<double>());
  }
  CHECK(fs::exists(dir / "balance_trace.tsv"));
  // a starved budget reports a failed check
  CHECK(run({"--command", "balance", "--registry", "fermat_conic", "--t", "0.2", "--max-iters",
             "2", "--samples", "300"})
            .code == 1);
}

TEST_CASE("verify: per-check isolation and exit codes") {
  const Run r = run({"--command", "verify", "--registry", "hyperplane_p2", "--checks",
                     "theorem6,theorem5", "--samples", "500"});
  CHECK(r.code == 2);
  const json reports = r.manifest()["reports"];
  REQUIRE(reports.size() == 3);
  CHECK(reports[0]["error_kind"] == "contract");
  CHECK(reports[1]["pass"] == true);

  const Run t = run({"--command", "verify", "--registry", "fermat_conic", "--checks",
                     "theorem5", "--t", "0", "--samples", "300"});
  CHECK(t.code == 0);
}

TEST_CASE("sample writes a batch dump") {
  const fs::path dir = scratch("sample");
  const Run s = run({"--command", "sample", "--registry", "fermat_cubic", "--samples", "100",
                     "--out", dir.string()});
  REQUIRE(s.code == 0);
  CHECK(s.manifest()["reports"][0]["points"] == 2700);
  CHECK(fs::exists(dir / "batch.txt"));
}

TEST_CASE("config file with flag overrides") {
  const fs::path dir = scratch("config");
  {
    std::ofstream c(dir / "run.json");
    c << R"({"command": "energy", "registry": "fermat_cubic", "samples": 200, "t": 0.4})";
  }
  const Run a = run({"--config", (dir / "run.json").string()});
  const Run b = run({"--config", (dir / "run.json").string(), "--samples", "300"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.manifest()["config"]["samples"] == 200);
  CHECK(b.manifest()["config"]["samples"] == 300);
  CHECK(b.manifest()["config"]["registry"] == "fermat_cubic");
}

TEST_CASE("manifests are reproducible across thread counts") {
  const std::vector<std::string> base{"--command", "verify",   "--checks",
                                      "theorem5,theorem2",      "--samples",
                                      "1500",      "--seed", "7"};
  auto one = base, many = base;
  one.insert(one.end(), {"--threads", "1"});
  many.insert(many.end(), {"--threads", "4"});
  const Run a = run(one), b = run(many);
  REQUIRE(a.code == b.code);
  CHECK(a.manifest()["reports"] == b.manifest()["reports"]);
}
