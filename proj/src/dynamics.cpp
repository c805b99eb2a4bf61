#include "swkit/dynamics.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace swkit {

std::string method_name(Method m) {
  return m == Method::rk4 ? "rk4" : "implicit_midpoint";
}

Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "implicit_midpoint") return Method::implicit_midpoint;
  throw InvalidParams("unknown integrator method '" + s + "'");
}

IntegrationPlan make_plan(const IntegratorConfig& cfg) {
  if (!(cfg.h > 0.0)) throw InvalidParams("step h must be positive");
  if (!(cfg.T >= 0.0)) throw InvalidParams("final time T must be nonnegative");
  IntegrationPlan plan;
  plan.steps = std::lround(cfg.T / cfg.h);
  plan.T = cfg.T;
  plan.h = plan.steps > 0 ? cfg.T / static_cast<double>(plan.steps) : cfg.h;
  return plan;
}

namespace {

bool finite(const Vec& z) { return z.allFinite(); }

Vec rk4_step(const VectorField& f, const Vec& z, double h) {
  const Vec k1 = f(z);
  const Vec k2 = f(z + 0.5 * h * k1);
  const Vec k3 = f(z + 0.5 * h * k2);
  const Vec k4 = f(z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Mat fd_jacobian(const VectorField& f, const Vec& z) {
  const int d = static_cast<int>(z.size());
  Mat J(d, d);
  Vec w = z;
  for (int i = 0; i < d; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(z[i]));
    w[i] = z[i] + h;
    const Vec fp = f(w);
    w[i] = z[i] - h;
    const Vec fm = f(w);
    w[i] = z[i];
    J.col(i) = (fp - fm) / (2.0 * h);
  }
  return J;
}

Vec midpoint_step(const VectorField& f, const Vec& z0, double h, const IntegratorConfig& cfg,
                  long index) {
  const int d = static_cast<int>(z0.size());
  auto residual = [&](const Vec& z1) -> Vec { return z1 - z0 - h * f(0.5 * (z0 + z1)); };
  Vec z1 = z0 + h * f(z0);
  Vec F = residual(z1);
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const Mat J = Mat::Identity(d, d) - 0.5 * h * fd_jacobian(f, 0.5 * (z0 + z1));
    const Vec delta = -J.partialPivLu().solve(F);
    if (!finite(delta)) throw NewtonDivergence(index);
    double lambda = 1.0;
    Vec trial = z1 + delta;
    Vec Ft = residual(trial);
    for (int k = 0; k < 10 && Ft.norm() > F.norm() && F.norm() > 0.0; ++k) {
      lambda *= 0.5;
      trial = z1 + lambda * delta;
      Ft = residual(trial);
    }
    z1 = trial;
    F = Ft;
    if (lambda * delta.norm() <= cfg.newton_tol * std::max(1.0, z1.norm())) return z1;
  }
  if (F.norm() <= cfg.newton_tol * std::max(1.0, z1.norm())) return z1;
  throw NewtonDivergence(index);
}

}  // namespace

Vec step(const VectorField& f, const Vec& z, double h, const IntegratorConfig& cfg, long index) {
  Vec out = cfg.method == Method::rk4 ? rk4_step(f, z, h) : midpoint_step(f, z, h, cfg, index);
  if (!finite(out)) throw NonFiniteState(index);
  return out;
}

std::vector<std::pair<double, Vec>> integrate_field(
    const VectorField& f, const Vec& z0, const IntegratorConfig& cfg,
    const std::function<void(long, Vec&)>& post_step) {
  const IntegrationPlan plan = make_plan(cfg);
  if (!finite(z0)) throw NonFiniteState(0);
  const long total = plan.steps + 1;
  // Interior multiples of the stride, plus t = 0 and t = T.
  const long interior = cfg.max_points - 2;
  const long stride = total <= cfg.max_points ? 1
                      : interior <= 0         ? plan.steps + 1
                                              : (plan.steps + interior - 1) / interior;
  std::vector<std::pair<double, Vec>> out;
  out.reserve(static_cast<size_t>(std::min(total, cfg.max_points) + 1));
  out.emplace_back(0.0, z0);
  Vec z = z0;
  for (long s = 1; s <= plan.steps; ++s) {
    z = step(f, z, plan.h, cfg, s);
    if (post_step) post_step(s, z);
    if (s % stride == 0 || s == plan.steps)
      out.emplace_back(s == plan.steps ? plan.T : plan.h * static_cast<double>(s), z);
  }
  return out;
}

Trajectory integrate(const PoissonStructure& P, const ScalarField& H, const Vec& z0,
                     const IntegratorConfig& cfg, const std::vector<ScalarField>& casimirs,
                     const std::vector<std::string>& casimir_names) {
  if (z0.size() != P.dim() || H.dim() != P.dim())
    throw DimensionMismatch("integrate: state, structure and Hamiltonian dimensions differ");
  for (const auto& c : casimirs)
    if (c.dim() != P.dim()) throw DimensionMismatch("integrate: Casimir dimension");
  VectorField f = [&](const Vec& z) { return hamiltonian_vector(P, H, z); };
  const auto rec = integrate_field(f, z0, cfg);
  Trajectory tr;
  tr.plan = make_plan(cfg);
  tr.casimir_names = casimir_names;
  if (tr.casimir_names.size() != casimirs.size()) {
    tr.casimir_names.clear();
    for (size_t i = 0; i < casimirs.size(); ++i) tr.casimir_names.push_back("cas" + std::to_string(i + 1));
  }
  tr.casimirs.resize(static_cast<long>(rec.size()), static_cast<long>(casimirs.size()));
  for (size_t i = 0; i < rec.size(); ++i) {
    tr.times.push_back(rec[i].first);
    tr.states.push_back(rec[i].second);
    tr.energy.push_back(H(rec[i].second));
    for (size_t k = 0; k < casimirs.size(); ++k)
      tr.casimirs(static_cast<long>(i), static_cast<long>(k)) = casimirs[k](rec[i].second);
  }
  return tr;
}

double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double f0 = series.front();
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - f0));
  return worst / std::max(1.0, std::abs(f0));
}

DriftReport diagnostics(const Trajectory& traj, const PoissonStructure& P, const ScalarField& H,
                        const std::vector<ScalarField>& casimirs) {
  DriftReport rep;
  std::vector<double> e;
  e.reserve(traj.states.size());
  for (const Vec& z : traj.states) {
    if (z.size() != P.dim()) throw DimensionMismatch("diagnostics: state dimension");
    e.push_back(H(z));
  }
  rep.energy_drift = relative_drift(e);
  for (const auto& c : casimirs) {
    std::vector<double> s;
    s.reserve(traj.states.size());
    for (const Vec& z : traj.states) s.push_back(c(z));
    rep.casimir_drifts.push_back(relative_drift(s));
  }
  return rep;
}

OrderEstimate order_estimate(const VectorField& f, const Vec& z0, const IntegratorConfig& base) {
  auto final_state = [&](double h) {
    IntegratorConfig cfg = base;
    cfg.h = h;
    const IntegrationPlan plan = make_plan(cfg);
    Vec z = z0;
    for (long s = 1; s <= plan.steps; ++s) z = step(f, z, plan.h, cfg, s);
    return z;
  };
  const Vec zh = final_state(base.h);
  const Vec zh2 = final_state(base.h / 2.0);
  const Vec zref = final_state(base.h / 8.0);
  OrderEstimate est;
  est.error_h = (zh - zref).norm();
  est.error_h2 = (zh2 - zref).norm();
  const double floor = 1e-12 * std::max(1.0, zref.norm());
  if (est.error_h <= floor || est.error_h2 <= floor) {
    est.reliable = false;
    est.order = 0.0;
    return est;
  }
  est.order = std::log2(est.error_h / est.error_h2);
  return est;
}

OrderEstimate order_estimate(const PoissonStructure& P, const ScalarField& H, const Vec& z0,
                             const IntegratorConfig& base) {
  VectorField f = [&](const Vec& z) { return hamiltonian_vector(P, H, z); };
  return order_estimate(f, z0, base);
}

}  // namespace swkit
