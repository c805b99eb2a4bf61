#pragma once

#include "swkit/poisson.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swkit {

enum class Method { rk4, implicit_midpoint };
std::string method_name(Method m);
Method parse_method(const std::string& s);

struct IntegratorConfig {
  Method method = Method::rk4;
  double h = 1e-3;
  double T = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  long max_points = 10'000'000;
};

/// steps = round(T / h), h = T / steps.
struct IntegrationPlan {
  long steps = 0;
  double h = 0.0;
  double T = 0.0;
};
IntegrationPlan make_plan(const IntegratorConfig& cfg);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<double> energy;
  /// One row per recorded time, one column per tracked Casimir.
  Mat casimirs;
  std::vector<std::string> casimir_names;
  IntegrationPlan plan;
};

struct DriftReport {
  double energy_drift = 0.0;
  std::vector<double> casimir_drifts;
  std::optional<double> order_estimate;
};

using VectorField = std::function<Vec(const Vec&)>;

/// One fixed step of the chosen method. Throws NewtonDivergence with the
/// given step index.
Vec step(const VectorField& f, const Vec& z, double h, const IntegratorConfig& cfg, long index);

/// Fixed-step integration of z' = f(z). The observer sees every recorded
/// (t, z); recording keeps every step up to cfg.max_points, else a uniform
/// subsample. `post_step` may modify the state after each step.
std::vector<std::pair<double, Vec>> integrate_field(
    const VectorField& f, const Vec& z0, const IntegratorConfig& cfg,
    const std::function<void(long, Vec&)>& post_step = nullptr);

Trajectory integrate(const PoissonStructure& P, const ScalarField& H, const Vec& z0,
                     const IntegratorConfig& cfg, const std::vector<ScalarField>& casimirs = {},
                     const std::vector<std::string>& casimir_names = {});

/// Relative drift max_t |f(t) - f(0)| / max(1, |f(0)|).
double relative_drift(const std::vector<double>& series);

DriftReport diagnostics(const Trajectory& traj, const PoissonStructure& P, const ScalarField& H,
                        const std::vector<ScalarField>& casimirs);

struct OrderEstimate {
  double order = 0.0;
  bool reliable = true;
  double error_h = 0.0;
  double error_h2 = 0.0;
};

/// log2(|z_h(T) - z_ref| / |z_{h/2}(T) - z_ref|) with z_ref at h/8. Flagged
/// unreliable when either error sits at rounding level.
OrderEstimate order_estimate(const PoissonStructure& P, const ScalarField& H, const Vec& z0,
                             const IntegratorConfig& base);
OrderEstimate order_estimate(const VectorField& f, const Vec& z0, const IntegratorConfig& base);

}  // namespace swkit
