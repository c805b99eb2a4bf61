#include "swkit/scenario.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <set>

namespace swkit {

namespace {

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ScenarioError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ScenarioError("unknown key '" + it.key() + "' in " + where);
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ScenarioError(where + " is missing '" + key + "'");
  return obj[key];
}

int get_int(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ScenarioError(where + "." + key + " must be an integer");
  return v.get<int>();
}

double get_double(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ScenarioError(what + " must be a number");
  return v.get<double>();
}

std::string get_string(const Json& v, const std::string& what) {
  if (!v.is_string()) throw ScenarioError(what + " must be a string");
  return v.get<std::string>();
}

LieAlgebra algebra_from(const Json& obj, const std::string& where) {
  const bool has_preset = obj.contains("algebra");
  const bool has_tensor = obj.contains("structure_constants");
  if (has_preset == has_tensor)
    throw ScenarioError(where + " needs exactly one of 'algebra' or 'structure_constants'");
  if (has_preset) return build_algebra(get_string(obj["algebra"], where + ".algebra"));
  const StructureTensor c = structure_tensor_from_json(obj["structure_constants"]);
  const int n = static_cast<int>(c.size());
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(n) * n * n);
  for (const auto& plane : c)
    for (const auto& row : plane) flat.insert(flat.end(), row.begin(), row.end());
  return LieAlgebra::unchecked(n, std::move(flat));
}

void parse_poisson(const Json& j, Scenario& s) {
  const std::string where = "poisson";
  if (!j.is_object()) throw ScenarioError("poisson must be an object");
  const std::string type = get_string(require(j, "type", where), "poisson.type");
  if (type == "canonical") {
    check_keys(j, {"type", "m"}, where);
    s.poisson = PoissonStructure::canonical(get_int(j, "m", where));
  } else if (type == "lie_poisson") {
    check_keys(j, {"type", "algebra", "structure_constants"}, where);
    s.algebra = algebra_from(j, where);
    s.poisson = PoissonStructure::lie_poisson(*s.algebra);
  } else if (type == "darboux_product") {
    check_keys(j, {"type", "m", "algebra", "structure_constants", "transverse", "n"}, where);
    const int m = get_int(j, "m", where);
    if (j.contains("transverse")) {
      if (j.contains("algebra") || j.contains("structure_constants"))
        throw ScenarioError("poisson: 'transverse' excludes 'algebra' and 'structure_constants'");
      const int n = get_int(j, "n", where);
      s.poisson = PoissonStructure::darboux_product(
          m, StructureFunctionField(poly_matrix_from_json(j["transverse"], n, n, n)));
    } else {
      if (j.contains("n")) throw ScenarioError("poisson.n is only used with 'transverse'");
      s.algebra = algebra_from(j, where);
      s.poisson = PoissonStructure::darboux_product(m, *s.algebra);
    }
  } else if (type == "custom") {
    check_keys(j, {"type", "dim", "bivector"}, where);
    const int d = get_int(j, "dim", where);
    s.poisson = PoissonStructure::custom(poly_matrix_from_json(require(j, "bivector", where), d, d, d));
  } else {
    throw ScenarioError("unknown poisson.type '" + type + "'");
  }
}

void parse_hamiltonian(const Json& j, Scenario& s) {
  const std::string where = "hamiltonian";
  if (!j.is_object()) throw ScenarioError("hamiltonian must be an object");
  s.family = get_string(require(j, "family", where), "hamiltonian.family");
  if (s.family == "polynomial") {
    check_keys(j, {"family", "terms"}, where);
    if (!s.poisson) throw ScenarioError("polynomial hamiltonian needs a poisson structure");
    s.polynomial = polynomial_from_json(require(j, "terms", where), s.poisson->dim());
  } else if (s.family == "euler_top") {
    check_keys(j, {"family", "inertia"}, where);
    if (!s.poisson || s.poisson->kind() != StructureKind::lie_poisson)
      throw ScenarioError("euler_top needs a lie_poisson structure");
    const int d = s.poisson->dim();
    s.inertia = vector_from_json(require(j, "inertia", where), d);
    Polynomial H(d);
    for (int i = 0; i < d; ++i) {
      if (!(s.inertia[i] > 0.0)) throw InvalidParams("inertia entries must be positive");
      const Polynomial r = Polynomial::variable(d, i);
      H += r * r * (0.5 / s.inertia[i]);
    }
    s.polynomial = H;
  } else if (s.family == "quadratic_gauge") {
    check_keys(j, {"family", "gamma_inv", "A", "chi_inv"}, where);
    if (!s.poisson || s.poisson->kind() != StructureKind::darboux_product)
      throw ScenarioError("quadratic_gauge needs a darboux_product structure");
    QuadraticGaugeFields f;
    f.m = s.poisson->m();
    f.n = s.poisson->n();
    f.gamma_inv = poly_matrix_from_json(require(j, "gamma_inv", where), f.m, f.m, f.m);
    f.A = poly_matrix_from_json(require(j, "A", where), f.m, f.n, f.m);
    f.chi_inv = j.contains("chi_inv") ? poly_matrix_from_json(j["chi_inv"], f.n, f.n, f.m)
                                      : PolyMatrix(f.n, f.n, f.m);
    f.validate();
    s.gauge = f;
  } else if (s.family == "kk") {
    check_keys(j, {"family", "group", "m", "gamma_inv", "A", "iota_inv", "formulation",
                   "reproject_every"},
               where);
    KKMetricSpec spec;
    spec.group = build_group(get_string(require(j, "group", where), "hamiltonian.group"));
    spec.m = get_int(j, "m", where);
    const int n = spec.n();
    spec.gamma_inv = poly_matrix_from_json(require(j, "gamma_inv", where), spec.m, spec.m, spec.m);
    spec.A = poly_matrix_from_json(require(j, "A", where), spec.m, n, spec.m);
    spec.iota_inv = j.contains("iota_inv") ? matrix_from_json(j["iota_inv"], n, n) : Mat::Zero(n, n);
    spec.validate();
    if (j.contains("formulation")) {
      const std::string f = get_string(j["formulation"], "hamiltonian.formulation");
      if (f == "canonical") s.kk_formulation = KKFormulation::canonical;
      else if (f == "geodesic") s.kk_formulation = KKFormulation::geodesic;
      else throw ScenarioError("unknown formulation '" + f + "'");
    }
    if (j.contains("reproject_every")) s.kk_reproject_every = get_int(j, "reproject_every", where);
    s.kk = spec;
  } else {
    throw ScenarioError("unknown hamiltonian.family '" + s.family + "'");
  }
}

void parse_initial(const Json& j, Scenario& s) {
  const std::string where = "initial";
  if (s.kk) {
    check_keys(j, {"x", "p", "mu", "g", "wong_r"}, where);
    const int m = s.kk->m, n = s.kk->n();
    s.kk0.x = vector_from_json(require(j, "x", where), m);
    s.kk0.p = vector_from_json(require(j, "p", where), m);
    s.kk0.mu = vector_from_json(require(j, "mu", where), n);
    s.kk0.g_log = j.contains("g") ? vector_from_json(j["g"], n) : Vec::Zero(n);
    if (j.contains("wong_r")) s.kk0.wong_r = vector_from_json(j["wong_r"], n);
  } else {
    check_keys(j, {"z"}, where);
    const int d = s.poisson ? s.poisson->dim() : -1;
    s.z0 = vector_from_json(require(j, "z", where), d);
  }
}

void parse_integrator(const Json& j, Scenario& s) {
  check_keys(j, {"method", "h", "T", "newton_tol", "newton_max_iter", "max_points", "order_methods"},
             "integrator");
  IntegratorConfig& c = s.integrator;
  if (j.contains("method")) c.method = parse_method(get_string(j["method"], "integrator.method"));
  if (j.contains("h")) c.h = get_double(j["h"], "integrator.h");
  if (j.contains("T")) c.T = get_double(j["T"], "integrator.T");
  if (j.contains("newton_tol")) c.newton_tol = get_double(j["newton_tol"], "integrator.newton_tol");
  if (j.contains("newton_max_iter")) c.newton_max_iter = get_int(j, "newton_max_iter", "integrator");
  if (j.contains("max_points")) {
    if (!j["max_points"].is_number_integer() || j["max_points"].get<long>() < 2)
      throw ScenarioError("integrator.max_points must be an integer >= 2");
    c.max_points = j["max_points"].get<long>();
  }
  if (j.contains("order_methods")) {
    if (!j["order_methods"].is_array()) throw ScenarioError("integrator.order_methods must be a list");
    for (const auto& m : j["order_methods"]) s.order_methods.push_back(parse_method(get_string(m, "method")));
  }
  make_plan(c);
}

void parse_outputs(const Json& j, Scenario& s) {
  check_keys(j, {"trajectory", "kk_trajectory", "wong_trajectory", "fields", "orders", "report",
                 "manifest"},
             "outputs");
  auto set = [&](const char* key, std::string& dst) {
    if (j.contains(key)) dst = get_string(j[key], std::string("outputs.") + key);
  };
  set("trajectory", s.outputs.trajectory);
  set("kk_trajectory", s.outputs.kk_trajectory);
  set("wong_trajectory", s.outputs.wong_trajectory);
  set("fields", s.outputs.fields);
  set("orders", s.outputs.orders);
  set("report", s.outputs.report);
  set("manifest", s.outputs.manifest);
}

void parse_tolerances(const Json& j, Scenario& s) {
  check_keys(j, {"jacobi", "casimir", "compare", "jet", "drift"}, "tolerances");
  auto set = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = get_double(j[key], std::string("tolerances.") + key);
  };
  set("jacobi", s.tol.jacobi);
  set("casimir", s.tol.casimir);
  set("compare", s.tol.compare);
  set("jet", s.tol.jet);
  set("drift", s.tol.drift);
}

void parse_check(const Json& j, Scenario& s) {
  check_keys(j, {"samples", "radius"}, "check");
  if (j.contains("samples")) s.check.samples = get_int(j, "samples", "check");
  if (j.contains("radius")) s.check.radius = get_double(j["radius"], "check.radius");
  if (s.check.samples < 1) throw ScenarioError("check.samples must be positive");
}

void parse_extract(const Json& j, Scenario& s) {
  check_keys(j, {"grid", "max_condition"}, "extract");
  if (!s.poisson || s.poisson->kind() != StructureKind::darboux_product)
    throw ScenarioError("extract needs a darboux_product structure");
  const Json& grid = require(j, "grid", "extract");
  if (!grid.is_array() || grid.empty()) throw ScenarioError("extract.grid must be a nonempty list");
  for (const auto& x : grid) s.extract_grid.push_back(vector_from_json(x, s.poisson->m()));
  if (j.contains("max_condition")) s.extract_max_condition = get_double(j["max_condition"], "extract.max_condition");
}

void parse_casimirs(const Json& j, Scenario& s) {
  if (!j.is_array()) throw ScenarioError("casimirs must be a list");
  if (!s.poisson) throw ScenarioError("casimirs need a poisson structure");
  for (const auto& c : j) {
    check_keys(c, {"name", "terms"}, "casimirs entry");
    s.extra_casimir_names.push_back(get_string(require(c, "name", "casimirs entry"), "casimir name"));
    s.extra_casimirs.push_back(
        ScalarField::from_polynomial(polynomial_from_json(require(c, "terms", "casimirs entry"), s.poisson->dim())));
  }
}

std::string default_system(const Scenario& s) {
  if (s.family == "kk") return "kk";
  if (s.family == "quadratic_gauge") return s.doc["hamiltonian"].contains("chi_inv") ? "em" : "wong";
  if (s.family == "euler_top") return "lie_poisson";
  if (s.family == "polynomial")
    return s.poisson->kind() == StructureKind::lie_poisson ? "lie_poisson" : "general";
  return "";
}

}  // namespace

void Scenario::require_valid_structure() const {
  if (!algebra) return;
  const JacobiReport rep = jacobi_report(algebra->dim(), algebra->constants());
  if (rep.residual > tol.jacobi) throw JacobiViolation(rep.residual, rep.a, rep.b, rep.c);
}

ScalarField Scenario::hamiltonian(const std::string& sys) const {
  if (sys == "wong" || sys == "em") {
    if (!gauge) throw InvalidParams("system '" + sys + "' needs a quadratic_gauge hamiltonian");
    const LieAlgebra g = algebra ? *algebra : linearize_transverse(*poisson);
    return sys == "wong" ? wong_hamiltonian(*gauge, g) : einstein_mayer_hamiltonian(*gauge, g);
  }
  if (sys == "lie_poisson" || sys == "general") {
    if (polynomial) return ScalarField::from_polynomial(*polynomial);
    if (gauge) return hamiltonian("em");
    throw InvalidParams("system '" + sys + "' needs a hamiltonian on the structure");
  }
  throw InvalidParams("system '" + sys + "' has no scalar Hamiltonian on the scenario structure");
}

std::vector<ScalarField> Scenario::casimirs(std::vector<std::string>* names) const {
  std::vector<std::string> n;
  std::vector<ScalarField> out = poisson ? default_casimirs(*poisson, &n) : std::vector<ScalarField>{};
  out.insert(out.end(), extra_casimirs.begin(), extra_casimirs.end());
  n.insert(n.end(), extra_casimir_names.begin(), extra_casimir_names.end());
  if (names) *names = n;
  return out;
}

KKState Scenario::kk_initial_state() const {
  if (!kk) throw InvalidParams("scenario has no kk hamiltonian");
  KKState s;
  s.x = kk0.x;
  s.p = kk0.p;
  s.mu = kk0.mu;
  s.g = kk->group.exp(kk0.g_log);
  return s;
}

Scenario parse_scenario(const std::string& text, const std::string& path) {
  Scenario s;
  s.path = path;
  s.text = text;
  s.hash = fnv1a64(text);
  try {
    s.doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(s.doc, {"poisson", "hamiltonian", "initial", "integrator", "outputs", "seed",
                     "tolerances", "check", "extract", "system", "casimirs", "description"},
             "scenario");
  const Json& d = s.doc;
  if (d.contains("poisson")) parse_poisson(d["poisson"], s);
  if (d.contains("hamiltonian")) parse_hamiltonian(d["hamiltonian"], s);
  if (!s.poisson && s.family != "kk" && !s.family.empty())
    throw ScenarioError("hamiltonian needs a poisson structure");
  if (d.contains("initial")) parse_initial(d["initial"], s);
  if (d.contains("integrator")) parse_integrator(d["integrator"], s);
  if (d.contains("outputs")) parse_outputs(d["outputs"], s);
  if (d.contains("seed")) {
    if (!d["seed"].is_number_unsigned()) throw ScenarioError("seed must be a nonnegative integer");
    s.seed = d["seed"].get<std::uint64_t>();
  }
  if (d.contains("tolerances")) parse_tolerances(d["tolerances"], s);
  if (d.contains("check")) parse_check(d["check"], s);
  if (d.contains("extract")) parse_extract(d["extract"], s);
  if (d.contains("casimirs")) parse_casimirs(d["casimirs"], s);
  s.system = d.contains("system") ? get_string(d["system"], "system") : default_system(s);
  static const std::set<std::string> systems = {"", "wong", "em", "lie_poisson", "general", "kk"};
  if (!systems.count(s.system)) throw ScenarioError("unknown system '" + s.system + "'");
  if (s.family == "polynomial" || s.family == "euler_top" || s.family == "quadratic_gauge")
    if (s.z0.size() == 0 && d.contains("initial"))
      throw ScenarioError("initial.z is required");
  return s;
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_text_file(path), path); }

}  // namespace swkit
