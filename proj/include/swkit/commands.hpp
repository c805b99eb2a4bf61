#pragma once

#include "swkit/dynamics.hpp"
#include "swkit/kk_bundle.hpp"
#include "swkit/reduction_rep.hpp"
#include "swkit/scenario.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace swkit {

enum ExitCode { exit_ok = 0, exit_usage = 1, exit_failure = 2 };

struct CommandOptions {
  std::string out_dir;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> system;
  /// Recorded verbatim in manifests.
  std::vector<std::string> argv;
};

struct KKWongComparison {
  KKTrajectory kk;
  Trajectory wong;
  /// Sup over recorded times, one entry per (x, p, r) component.
  Vec deviation;
  double sup = 0.0;
};

/// Integrates the bundle system and the Einstein-Mayer system with
/// chi_inv = iota_inv on matched data. r0 defaults to Ad(g0)^{-T} mu0.
KKWongComparison compare_kk_wong(const KKMetricSpec& spec, const KKState& s0, const IntegratorConfig& cfg,
                                 KKFormulation formulation = KKFormulation::geodesic,
                                 int reproject_every = 16, const std::optional<Vec>& r0 = std::nullopt);

/// Empty when every reported dimension matches the reference values, else a
/// description of the first mismatch.
std::string manton_mismatch(const ReductionReport& r);

int cmd_check(const Scenario& s, const CommandOptions& opt, std::ostream& out);
int cmd_extract(const Scenario& s, const CommandOptions& opt, std::ostream& out);
int cmd_simulate(const Scenario& s, const CommandOptions& opt, std::ostream& out);
int cmd_compare_kk_wong(const Scenario& s, const CommandOptions& opt, std::ostream& out);
int cmd_manton(const CommandOptions& opt, std::ostream& out);
int cmd_order(const Scenario& s, const CommandOptions& opt, std::ostream& out);

}  // namespace swkit
