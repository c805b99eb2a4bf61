#include "swkit/commands.hpp"
#include "swkit/errors.hpp"
#include "swkit/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"swkit: Poisson structures, Wong systems and Kaluza-Klein reduction"};
  app.require_subcommand(1, 1);

  std::string scenario_path;
  std::string out_dir;
  double tol = 0.0;
  long long seed = 0;
  std::string system;

  auto add_common = [&](CLI::App* sub, bool needs_scenario) {
    auto* opt = sub->add_option("--scenario", scenario_path, "scenario JSON document")->check(CLI::ExistingFile);
    if (needs_scenario) opt->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tol", tol, "override the command's primary tolerance");
    sub->add_option("--seed", seed, "override the scenario seed")->check(CLI::NonNegativeNumber);
  };

  auto* check = app.add_subcommand("check", "Jacobi and Casimir residuals over sampled points");
  add_common(check, true);
  auto* extract = app.add_subcommand("extract", "vertical jets and fields on a grid of base points");
  add_common(extract, true);
  auto* simulate = app.add_subcommand("simulate", "integrate a scenario and write its trajectory");
  add_common(simulate, true);
  simulate->add_option("--system", system, "wong, em, lie_poisson, general or kk")
      ->check(CLI::IsMember({"wong", "em", "lie_poisson", "general", "kk"}));
  auto* compare = app.add_subcommand("compare-kk-wong", "bundle geodesics against the Wong system");
  add_common(compare, true);
  auto* manton = app.add_subcommand("manton", "so3 + su3 reduction report");
  manton->add_option("--out", out_dir, "output directory");
  auto* order = app.add_subcommand("order", "convergence order of the integrators");
  add_common(order, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? swkit::exit_ok : swkit::exit_usage;
  }

  swkit::CommandOptions opt;
  opt.out_dir = out_dir;
  opt.argv.assign(argv, argv + argc);
  for (CLI::App* sub : {check, extract, simulate, compare, order}) {
    if (sub->count("--tol")) opt.tol = tol;
    if (sub->count("--seed")) opt.seed = static_cast<std::uint64_t>(seed);
  }
  if (simulate->count("--system")) opt.system = system;

  try {
    if (*manton) return swkit::cmd_manton(opt, std::cout);
    const swkit::Scenario s = swkit::load_scenario(scenario_path);
    if (*check) return swkit::cmd_check(s, opt, std::cout);
    if (*extract) return swkit::cmd_extract(s, opt, std::cout);
    if (*simulate) return swkit::cmd_simulate(s, opt, std::cout);
    if (*compare) return swkit::cmd_compare_kk_wong(s, opt, std::cout);
    if (*order) return swkit::cmd_order(s, opt, std::cout);
  } catch (const swkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return swkit::exit_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return swkit::exit_failure;
  }
  return swkit::exit_usage;
}
