#include "swkit/commands.hpp"

#include "swkit/errors.hpp"
#include "swkit/io.hpp"
#include "swkit/linalg.hpp"
#include "swkit/sw_extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace swkit {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Json integrator_json(const IntegratorConfig& c) {
  const IntegrationPlan plan = make_plan(c);
  return {{"method", method_name(c.method)},
          {"h", c.h},
          {"T", c.T},
          {"steps", plan.steps},
          {"h_effective", plan.h},
          {"newton_tol", c.newton_tol},
          {"newton_max_iter", c.newton_max_iter},
          {"max_points", c.max_points}};
}

/// Writes the listed files and a manifest describing how to reproduce them.
void write_outputs(const Scenario& s, const CommandOptions& opt, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& files, const Json& extra) {
  ensure_directory(opt.out_dir);
  Json listed = Json::object();
  for (const auto& [name, content] : files) {
    write_text_file(join_path(opt.out_dir, name), content);
    listed[name] = {{"fnv1a64", hex64(fnv1a64(content))}, {"bytes", content.size()}};
  }
  Json m;
  m["command"] = command;
  m["argv"] = opt.argv;
  m["scenario_path"] = s.path;
  m["scenario_fnv1a64"] = hex64(s.hash);
  m["scenario"] = s.doc;
  m["seed"] = opt.seed.value_or(s.seed);
  if (opt.tol) m["tol_override"] = *opt.tol;
  m["system"] = opt.system.value_or(s.system);
  m["integrator"] = integrator_json(s.integrator);
  m["outputs"] = listed;
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_text_file(join_path(opt.out_dir, s.outputs.manifest), m.dump(2) + "\n");
}

std::vector<Vec> sample_points(int d, int count, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(rng.uniform_vec(d, -radius, radius));
  return out;
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (long i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + ")";
}

std::string clean_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

KKWongComparison compare_kk_wong(const KKMetricSpec& spec, const KKState& s0, const IntegratorConfig& cfg,
                                 KKFormulation formulation, int reproject_every,
                                 const std::optional<Vec>& r0) {
  KKWongComparison out;
  out.kk = integrate_kk(spec, s0, cfg, reproject_every, formulation);
  const int m = spec.m, n = spec.n();
  const PoissonStructure P = PoissonStructure::darboux_product(m, spec.group.algebra);
  const ScalarField H = einstein_mayer_hamiltonian(kk_gauge_fields(spec), spec.group.algebra);
  WongState w = project_kk(spec, s0);
  if (r0) {
    if (r0->size() != n) throw DimensionMismatch("Wong charge has wrong length");
    w.r = *r0;
  }
  std::vector<std::string> names;
  const auto cas = default_casimirs(P, &names);
  out.wong = integrate(P, H, w.stacked(), cfg, cas, names);
  if (out.wong.states.size() != out.kk.states.size())
    throw NumericalCheckFailed("KK and Wong runs recorded different time grids");
  out.deviation = Vec::Zero(2 * m + n);
  for (size_t i = 0; i < out.kk.states.size(); ++i) {
    const Vec proj = project_kk(spec, out.kk.states[i]).stacked();
    out.deviation = out.deviation.cwiseMax((proj - out.wong.states[i]).cwiseAbs());
  }
  out.sup = out.deviation.maxCoeff();
  return out;
}

std::string manton_mismatch(const ReductionReport& r) {
  auto cmp = [](const std::string& what, int got, int want) -> std::string {
    if (got == want) return "";
    return what + " = " + std::to_string(got) + ", expected " + std::to_string(want);
  };
  for (const std::string& e :
       {cmp("dim g", r.dim_g, 11), cmp("dim c0", r.dim_c0, 10), cmp("dim S2(c0)^c", r.dim_s2_invariants, 15),
        cmp("dim g~", r.dim_gtilde, 4), cmp("dim g~ invariants", r.dim_gtilde_invariants, 4)})
    if (!e.empty()) return e;
  if (r.block_dims() != std::vector<int>{10, 1, 4}) return "sub-block dims differ from 10/1/4";
  std::vector<int> iso;
  for (const auto& c : r.isotypic) iso.push_back(c.multiplicity);
  if (iso != std::vector<int>{4, 6, 5}) return "isotypic dims differ from {4, 6, 5}";
  return "";
}

int cmd_check(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  const double tol_j = opt.tol.value_or(s.tol.jacobi);
  const double tol_c = opt.tol.value_or(s.tol.casimir);
  bool ok = true;
  Json rep;
  if (s.algebra) {
    const JacobiReport jr = jacobi_report(s.algebra->dim(), s.algebra->constants());
    const bool pass = jr.residual <= tol_j;
    ok = ok && pass;
    out << "algebra jacobi residual " << sci(jr.residual) << " at triple (" << jr.a << ","
        << jr.b << "," << jr.c << ")" << (pass ? "" : "  FAIL") << "\n";
    rep["algebra_jacobi"] = {{"residual", jr.residual}, {"triple", {jr.a, jr.b, jr.c}}};
  }
  if (s.poisson) {
    const PoissonStructure& P = *s.poisson;
    const auto pts = sample_points(P.dim(), s.check.samples, s.check.radius, opt.seed.value_or(s.seed));
    JacobiPointReport worst;
    Vec worst_pt = pts.front();
    double antisym = 0.0;
    for (const Vec& z : pts) {
      const JacobiPointReport jr = jacobi_report_at(P, z);
      if (jr.residual > worst.residual) {
        worst = jr;
        worst_pt = z;
      }
      const Mat W = P.bivector_at(z);
      antisym = std::max(antisym, (W + W.transpose()).cwiseAbs().maxCoeff());
    }
    const bool pass = worst.residual <= tol_j && antisym <= tol_j;
    ok = ok && pass;
    out << kind_name(P.kind()) << " structure, " << pts.size() << " points: jacobi residual "
        << sci(worst.residual) << " at triple (" << worst.i << "," << worst.j << "," << worst.k
        << ") point " << vec_text(worst_pt) << ", antisymmetry " << sci(antisym)
        << (pass ? "" : "  FAIL") << "\n";
    rep["poisson_jacobi"] = {{"residual", worst.residual},
                             {"triple", {worst.i, worst.j, worst.k}},
                             {"point", vector_to_json(worst_pt)},
                             {"antisymmetry", antisym}};
    std::vector<std::string> names;
    const auto cas = s.casimirs(&names);
    Json cj = Json::array();
    for (size_t k = 0; k < cas.size(); ++k) {
      const double res = casimir_residual(P, cas[k], pts);
      const bool cpass = res <= tol_c;
      ok = ok && cpass;
      out << "casimir " << names[k] << " residual " << sci(res) << (cpass ? "" : "  FAIL") << "\n";
      cj.push_back({{"name", names[k]}, {"residual", res}});
    }
    rep["casimirs"] = cj;
  }
  if (!s.algebra && !s.poisson) throw ScenarioError("check needs a poisson structure");
  out << (ok ? "check passed" : "check FAILED") << "\n";
  if (!opt.out_dir.empty()) {
    rep["passed"] = ok;
    write_outputs(s, opt, "check", {{s.outputs.report, rep.dump(2) + "\n"}}, Json::object());
  }
  return ok ? exit_ok : exit_failure;
}

int cmd_extract(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  if (!s.poisson || s.poisson->kind() != StructureKind::darboux_product)
    throw ScenarioError("extract needs a darboux_product structure");
  if (s.extract_grid.empty()) throw ScenarioError("extract needs extract.grid");
  s.require_valid_structure();
  const int m = s.poisson->m(), n = s.poisson->n();
  const ScalarField H = s.hamiltonian(opt.system.value_or("general"));
  const double tol = opt.tol.value_or(s.tol.jet);

  std::string csv;
  for (int i = 0; i < m; ++i) csv += (i ? ",x" : "x") + std::to_string(i + 1);
  auto header = [&](const std::string& name, int r, int c) {
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < c; ++b) csv += "," + name + std::to_string(a + 1) + std::to_string(b + 1);
  };
  header("gamma_inv", m, m);
  header("A", m, n);
  header("chi_inv", n, n);
  csv += ",gamma_condition,chi_degenerate,grad_norm,status\n";
  const int blanks = m * m + m * n + n * n + 3;

  int failures = 0, degenerate = 0;
  for (const Vec& x : s.extract_grid) {
    for (int i = 0; i < m; ++i) csv += (i ? "," : "") + format_double(x[i]);
    try {
      const VerticalJet jet = vertical_jet(H, x, m, n, tol);
      const SWFields f = extract_fields(jet, s.extract_max_condition);
      for (const Mat* M : {&f.gamma_inv, &f.A, &f.chi_inv})
        for (long a = 0; a < M->rows(); ++a)
          for (long b = 0; b < M->cols(); ++b) csv += "," + format_double((*M)(a, b));
      csv += "," + format_double(f.gamma_condition) + "," + (f.chi_degenerate ? "1" : "0") + "," +
             format_double(jet.grad_norm) + ",ok\n";
      if (f.chi_degenerate) ++degenerate;
    } catch (const Error& e) {
      ++failures;
      for (int k = 0; k < blanks; ++k) csv += ",";
      csv += "error: " + clean_field(e.what()) + "\n";
      out << "point " << vec_text(x) << ": " << e.what() << "\n";
    }
  }
  const int total = static_cast<int>(s.extract_grid.size());
  out << "extracted fields at " << total - failures << " of " << total << " points";
  if (degenerate) out << ", chi degenerate at " << degenerate;
  out << "\n";
  if (!opt.out_dir.empty())
    write_outputs(s, opt, "extract", {{s.outputs.fields, csv}},
                  {{"points", total}, {"failures", failures}, {"chi_degenerate", degenerate}});
  else
    out << csv;
  return failures == total ? exit_failure : exit_ok;
}

int cmd_simulate(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  const std::string sys = opt.system.value_or(s.system);
  if (sys.empty()) throw ScenarioError("simulate needs a hamiltonian");
  if (sys == "kk") {
    if (!s.kk) throw ScenarioError("system kk needs a kk hamiltonian");
    const KKTrajectory tr =
        integrate_kk(*s.kk, s.kk_initial_state(), s.integrator, s.kk_reproject_every, s.kk_formulation);
    Json drift;
    drift["energy_drift"] = relative_drift(tr.energy);
    Json md = Json::array();
    for (int a = 0; a < s.kk->n(); ++a) {
      std::vector<double> series;
      for (const Vec& mu : tr.moments) series.push_back(mu[a]);
      md.push_back(relative_drift(series));
    }
    drift["moment_drifts"] = md;
    double gres = 0.0;
    for (const KKState& st : tr.states) gres = std::max(gres, s.kk->group.group_residual(st.g));
    drift["group_residual"] = gres;
    out << "kk run: " << tr.states.size() << " records, energy drift "
        << sci(drift["energy_drift"].get<double>()) << ", group residual " << sci(gres) << "\n";
    if (!opt.out_dir.empty())
      write_outputs(s, opt, "simulate", {{s.outputs.kk_trajectory, kk_trajectory_csv(tr, *s.kk)}},
                    {{"drift", drift}});
    return exit_ok;
  }
  if (!s.poisson) throw ScenarioError("simulate needs a poisson structure");
  if (s.z0.size() != s.poisson->dim()) throw ScenarioError("simulate needs initial.z");
  s.require_valid_structure();
  const ScalarField H = s.hamiltonian(sys);
  std::vector<std::string> names;
  const auto cas = s.casimirs(&names);
  const Trajectory tr = integrate(*s.poisson, H, s.z0, s.integrator, cas, names);
  const DriftReport d = diagnostics(tr, *s.poisson, H, cas);
  Json drift;
  drift["energy_drift"] = d.energy_drift;
  Json cd = Json::object();
  for (size_t k = 0; k < names.size(); ++k) cd[names[k]] = d.casimir_drifts[k];
  drift["casimir_drifts"] = cd;
  drift["casimir_columns"] = names;
  out << sys << " run: " << tr.states.size() << " records, energy drift " << sci(d.energy_drift);
  for (size_t k = 0; k < names.size(); ++k) out << ", " << names[k] << " drift " << sci(d.casimir_drifts[k]);
  out << "\n";
  if (!opt.out_dir.empty())
    write_outputs(s, opt, "simulate", {{s.outputs.trajectory, trajectory_csv(tr)}}, {{"drift", drift}});
  return exit_ok;
}

int cmd_compare_kk_wong(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  if (!s.kk) throw ScenarioError("compare-kk-wong needs a kk hamiltonian");
  const double tol = opt.tol.value_or(s.tol.compare);
  const KKWongComparison c = compare_kk_wong(*s.kk, s.kk_initial_state(), s.integrator, s.kk_formulation,
                                             s.kk_reproject_every, s.kk0.wong_r);
  const int m = s.kk->m, n = s.kk->n();
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < m; ++i) labels.push_back("p" + std::to_string(i + 1));
  for (int a = 0; a < n; ++a) labels.push_back("r" + std::to_string(a + 1));
  Json dev = Json::object();
  for (long i = 0; i < c.deviation.size(); ++i) {
    out << "  " << labels[static_cast<size_t>(i)] << "  " << sci(c.deviation[i]) << "\n";
    dev[labels[static_cast<size_t>(i)]] = c.deviation[i];
  }
  const bool pass = c.sup <= tol;
  out << "sup deviation " << sci(c.sup) << " against tolerance " << sci(tol) << ": "
      << (pass ? "PASS" : "FAIL") << "\n";
  if (!opt.out_dir.empty())
    write_outputs(s, opt, "compare-kk-wong",
                  {{s.outputs.kk_trajectory, kk_trajectory_csv(c.kk, *s.kk)},
                   {s.outputs.wong_trajectory, trajectory_csv(c.wong)}},
                  {{"deviation", dev}, {"sup_deviation", c.sup}, {"tolerance", tol}, {"passed", pass}});
  return pass ? exit_ok : exit_failure;
}

int cmd_manton(const CommandOptions& opt, std::ostream& out) {
  const ReductionReport r = manton_report();
  out << reduction_report_table(r);
  const std::string bad = manton_mismatch(r);
  out << (bad.empty() ? "all reference dimensions match" : "MISMATCH: " + bad) << "\n";
  if (!opt.out_dir.empty()) {
    ensure_directory(opt.out_dir);
    Json j = reduction_report_to_json(r);
    j["matches_reference"] = bad.empty();
    write_text_file(join_path(opt.out_dir, "manton_report.json"), j.dump(2) + "\n");
  }
  return bad.empty() ? exit_ok : exit_failure;
}

int cmd_order(const Scenario& s, const CommandOptions& opt, std::ostream& out) {
  if (!s.poisson || s.z0.size() != s.poisson->dim())
    throw ScenarioError("order needs a poisson structure and initial.z");
  s.require_valid_structure();
  const ScalarField H = s.hamiltonian(opt.system.value_or(s.system));
  std::vector<Method> methods = s.order_methods;
  if (methods.empty()) methods.push_back(s.integrator.method);
  std::string csv = "method,h,T,error_h,error_h2,order,reliable\n";
  for (Method m : methods) {
    IntegratorConfig cfg = s.integrator;
    cfg.method = m;
    const OrderEstimate e = order_estimate(*s.poisson, H, s.z0, cfg);
    char ord[32];
    std::snprintf(ord, sizeof ord, "%.4f", e.order);
    out << method_name(m) << ": order " << ord
        << (e.reliable ? "" : " (unreliable: errors at rounding level)") << ", errors " << sci(e.error_h)
        << " / " << sci(e.error_h2) << "\n";
    csv += method_name(m) + "," + format_double(cfg.h) + "," + format_double(cfg.T) + "," +
           format_double(e.error_h) + "," + format_double(e.error_h2) + "," + format_double(e.order) +
           "," + (e.reliable ? "1" : "0") + "\n";
  }
  if (!opt.out_dir.empty()) write_outputs(s, opt, "order", {{s.outputs.orders, csv}}, Json::object());
  return exit_ok;
}

}  // namespace swkit
