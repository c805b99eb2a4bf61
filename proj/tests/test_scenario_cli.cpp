#include "doctest.h"

#include "swkit/commands.hpp"
#include "swkit/errors.hpp"
#include "swkit/io.hpp"
#include "swkit/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace swkit;
namespace fs = std::filesystem;

namespace {

std::string scenario(const std::string& name) { return std::string(SWKIT_SCENARIO_DIR) + "/" + name; }

std::string fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("swkit_test_" + name);
  fs::remove_all(p);
  return p.string();
}

CommandOptions options(const std::string& dir) {
  CommandOptions o;
  o.out_dir = dir;
  o.argv = {"swkit", "test"};
  return o;
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      row.push_back(end == cell.c_str() ? std::nan("") : v);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("every shipped scenario parses") {
  for (const auto& entry : fs::directory_iterator(SWKIT_SCENARIO_DIR)) {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_scenario(entry.path().string()));
  }
  const Scenario s = load_scenario(scenario("landau_kk.json"));
  CHECK(s.family == "kk");
  CHECK(s.system == "kk");
  REQUIRE(s.kk.has_value());
  CHECK(s.kk->m == 2);
  CHECK(s.integrator.h == 1e-3);
  CHECK(load_scenario(scenario("landau_wong.json")).system == "wong");
  CHECK(load_scenario(scenario("euler_top.json")).system == "lie_poisson");
}

TEST_CASE("scenario documents are validated") {
  const std::string base = R"({"poisson": {"type": "canonical", "m": 1},
    "hamiltonian": {"family": "polynomial", "terms": [{"monomial": [2, 0], "coeff": 0.5}]},
    "initial": {"z": [1, 0]}, "integrator": {"method": "rk4", "h": 0.1, "T": 1}})";
  CHECK_NOTHROW(parse_scenario(base));
  auto with = [&](const std::string& from, const std::string& to) {
    std::string t = base;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK_THROWS_AS(parse_scenario(with("\"poisson\"", "\"extra\": 1, \"poisson\"")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"m\": 1", "\"m\": 1, \"n\": 2")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"h\": 0.1", "\"step\": 0.1")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"rk4\"", "\"euler\"")), Error);
  CHECK_THROWS_AS(parse_scenario(with("[1, 0]", "[1, 0, 3]")), Error);
  CHECK_THROWS_AS(parse_scenario("{\"poisson\": "), ScenarioError);
}

TEST_CASE("check reports Jacobi failures") {
  std::ostringstream out;
  const Scenario bad = load_scenario(scenario("check_perturbed_so3.json"));
  const std::string dir = fresh_dir("check_bad");
  CHECK(cmd_check(bad, options(dir), out) == exit_failure);
  CHECK(out.str().find("(0,1,2)") != std::string::npos);
  const Json rep = Json::parse(read_text_file(dir + "/report.json"));
  CHECK(rep["algebra_jacobi"]["residual"].get<double>() == doctest::Approx(0.1));
  CHECK(rep["passed"] == false);

  std::ostringstream ok;
  CHECK(cmd_check(load_scenario(scenario("check_so3.json")), options(fresh_dir("check_ok")), ok) == exit_ok);
}

TEST_CASE("extract writes one row per grid point") {
  std::ostringstream out;
  const std::string dir = fresh_dir("extract");
  CHECK(cmd_extract(load_scenario(scenario("extract_example.json")), options(dir), out) == exit_ok);
  const auto rows = read_csv(dir + "/fields.csv");
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r[1] == doctest::Approx(2.0));
    CHECK(r[2] == doctest::Approx(3.0));
    CHECK(r[3] == doctest::Approx(5.0));
  }
  const std::string fp = fresh_dir("extract_fp");
  CHECK(cmd_extract(load_scenario(scenario("extract_free_particle.json")), options(fp), out) == exit_ok);
  for (const auto& r : read_csv(fp + "/fields.csv")) CHECK(r[5] == 1.0);
}

TEST_CASE("Landau Wong orbit closes after one cyclotron period") {
  std::ostringstream out;
  const std::string dir = fresh_dir("landau_wong");
  CHECK(cmd_simulate(load_scenario(scenario("landau_wong.json")), options(dir), out) == exit_ok);
  const auto rows = read_csv(dir + "/trajectory.csv");
  REQUIRE(rows.size() == 5001);
  double best = 1e9, when = 0.0, diameter = 0.0;
  for (const auto& r : rows) {
    const double d = std::hypot(r[1] - 1.0, r[2]);
    diameter = std::max(diameter, d);
    if (r[0] > 0.5 && r[0] < 2.0 && d < best) {
      best = d;
      when = r[0];
    }
    CHECK(r[5] == 1.0);
  }
  CHECK(when == doctest::Approx(2.0 * M_PI / 5.0).epsilon(1e-3));
  CHECK(best <= 1e-2);
  CHECK(diameter == doctest::Approx(1.4).epsilon(1e-4));
}

TEST_CASE("bundle and Wong trajectories agree") {
  std::ostringstream out;
  CHECK(cmd_compare_kk_wong(load_scenario(scenario("landau_kk.json")), options(fresh_dir("cmp")), out) == exit_ok);
  CHECK(out.str().find("PASS") != std::string::npos);
  CHECK(cmd_compare_kk_wong(load_scenario(scenario("so3_linear_kk.json")), options(fresh_dir("cmp3")), out) ==
        exit_ok);
  std::ostringstream bad;
  CHECK(cmd_compare_kk_wong(load_scenario(scenario("landau_kk_mismatch.json")), options(fresh_dir("cmp_bad")),
                            bad) == exit_failure);
  CHECK(bad.str().find("FAIL") != std::string::npos);
}

TEST_CASE("manifests record inputs and output hashes") {
  std::ostringstream out;
  const std::string dir = fresh_dir("manifest");
  CommandOptions o = options(dir);
  o.seed = 5;
  CHECK(cmd_simulate(load_scenario(scenario("euler_top.json")), o, out) == exit_ok);
  const Json m = Json::parse(read_text_file(dir + "/manifest.json"));
  CHECK(m["command"] == "simulate");
  CHECK(m["seed"] == 5);
  CHECK(m["system"] == "lie_poisson");
  CHECK(m["argv"].size() == 2);
  CHECK(m["integrator"]["steps"] == 10000);
  const std::string text = read_text_file(scenario("euler_top.json"));
  CHECK(m["scenario_fnv1a64"] == hex64(fnv1a64(text)));
  const std::string csv = read_text_file(dir + "/trajectory.csv");
  CHECK(m["outputs"]["trajectory.csv"]["fnv1a64"] == hex64(fnv1a64(csv)));
  CHECK(m["outputs"]["trajectory.csv"]["bytes"] == csv.size());
  CHECK(m.contains("drift"));
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* name : {"euler_top.json", "so3_linear_kk.json"}) {
    CAPTURE(name);
    const Scenario s = load_scenario(scenario(name));
    std::ostringstream out;
    const std::string a = fresh_dir("det_a"), b = fresh_dir("det_b");
    const bool kk = s.family == "kk";
    CHECK((kk ? cmd_compare_kk_wong(s, options(a), out) : cmd_simulate(s, options(a), out)) == exit_ok);
    CHECK((kk ? cmd_compare_kk_wong(s, options(b), out) : cmd_simulate(s, options(b), out)) == exit_ok);
    for (const auto& f : fs::directory_iterator(a)) {
      const std::string fname = f.path().filename().string();
      CHECK(read_text_file(a + "/" + fname) == read_text_file(b + "/" + fname));
    }
  }
}

TEST_CASE("manton report") {
  std::ostringstream out;
  const std::string dir = fresh_dir("manton");
  CHECK(cmd_manton(options(dir), out) == exit_ok);
  const Json r = Json::parse(read_text_file(dir + "/manton_report.json"));
  CHECK(r["dim_s2_invariants"] == 15);
  CHECK(manton_mismatch(manton_report()).empty());
}
