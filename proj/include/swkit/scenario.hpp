#pragma once

#include "swkit/dynamics.hpp"
#include "swkit/io.hpp"
#include "swkit/kk_bundle.hpp"
#include "swkit/lie_algebra.hpp"
#include "swkit/poisson.hpp"
#include "swkit/sw_extract.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swkit {

/// Defaults apply to any key the document leaves out.
struct Tolerances {
  double jacobi = 1e-10;
  double casimir = 1e-10;
  double compare = 1e-6;
  double jet = 1e-10;
  double drift = 1e-8;
};

struct CheckConfig {
  int samples = 100;
  double radius = 1.0;
};

/// File names, relative to the --out directory.
struct OutputConfig {
  std::string trajectory = "trajectory.csv";
  std::string kk_trajectory = "kk_trajectory.csv";
  std::string wong_trajectory = "wong_trajectory.csv";
  std::string fields = "fields.csv";
  std::string orders = "orders.csv";
  std::string report = "report.json";
  std::string manifest = "manifest.json";
};

struct KKInitial {
  Vec x;
  Vec p;
  Vec mu;
  /// Group element as exp of these algebra coordinates.
  Vec g_log;
  /// Replaces r = Ad(g)^{-T} mu on the Wong side of a comparison.
  std::optional<Vec> wong_r;
};

struct Scenario {
  std::string path;
  std::string text;
  std::uint64_t hash = 0;
  Json doc;

  std::optional<PoissonStructure> poisson;
  /// Algebra behind a lie_poisson or darboux_product structure, built without
  /// the Jacobi check so that `check` can report on it.
  std::optional<LieAlgebra> algebra;

  std::string family;
  std::optional<Polynomial> polynomial;
  std::optional<QuadraticGaugeFields> gauge;
  Vec inertia;
  std::optional<KKMetricSpec> kk;
  KKFormulation kk_formulation = KKFormulation::geodesic;
  int kk_reproject_every = 16;

  Vec z0;
  KKInitial kk0;

  IntegratorConfig integrator;
  std::vector<Method> order_methods;
  OutputConfig outputs;
  std::uint64_t seed = 0;
  Tolerances tol;
  CheckConfig check;
  std::vector<Vec> extract_grid;
  double extract_max_condition = 1e12;
  std::string system;

  std::vector<ScalarField> extra_casimirs;
  std::vector<std::string> extra_casimir_names;

  /// Throws JacobiViolation when the algebra behind the structure is not a
  /// Lie algebra to tol.jacobi.
  void require_valid_structure() const;
  /// Hamiltonian for the selected system on the scenario structure.
  ScalarField hamiltonian(const std::string& system) const;
  /// Default Casimirs of the structure followed by the listed ones.
  std::vector<ScalarField> casimirs(std::vector<std::string>* names) const;
  KKState kk_initial_state() const;
};

Scenario parse_scenario(const std::string& text, const std::string& path = "");
Scenario load_scenario(const std::string& path);

}  // namespace swkit
