#include "swkit/io.hpp"

#include "swkit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace swkit {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ScenarioError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ScenarioError("write failed for '" + path + "'");
}

void ensure_directory(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw ScenarioError("cannot create directory '" + path + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  return (std::filesystem::path(dir) / file).string();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t";
  const long d = tr.states.empty() ? 0 : tr.states.front().size();
  for (long i = 0; i < d; ++i) out += ",z" + std::to_string(i + 1);
  out += ",H";
  for (long k = 0; k < tr.casimirs.cols(); ++k) out += ",cas" + std::to_string(k + 1);
  out += '\n';
  for (size_t s = 0; s < tr.states.size(); ++s) {
    out += format_double(tr.times[s]);
    for (long i = 0; i < d; ++i) out += "," + format_double(tr.states[s][i]);
    out += "," + format_double(tr.energy[s]);
    for (long k = 0; k < tr.casimirs.cols(); ++k)
      out += "," + format_double(tr.casimirs(static_cast<long>(s), k));
    out += '\n';
  }
  return out;
}

std::string kk_trajectory_csv(const KKTrajectory& tr, const KKMetricSpec& spec) {
  const int m = spec.m, n = spec.n(), k = spec.group.matrix_dim;
  std::string out = "t";
  for (int i = 0; i < m; ++i) out += ",x" + std::to_string(i + 1);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const std::string ij = std::to_string(r + 1) + std::to_string(c + 1);
      out += ",g" + ij + "_re,g" + ij + "_im";
    }
  for (int i = 0; i < m; ++i) out += ",p" + std::to_string(i + 1);
  for (int a = 0; a < n; ++a) out += ",mu" + std::to_string(a + 1);
  out += ",K0\n";
  for (size_t s = 0; s < tr.states.size(); ++s) {
    const KKState& st = tr.states[s];
    out += format_double(tr.times[s]);
    for (int i = 0; i < m; ++i) out += "," + format_double(st.x[i]);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        out += "," + format_double(st.g(r, c).real()) + "," + format_double(st.g(r, c).imag());
    for (int i = 0; i < m; ++i) out += "," + format_double(st.p[i]);
    for (int a = 0; a < n; ++a) out += "," + format_double(st.mu[a]);
    out += "," + format_double(tr.energy[s]) + '\n';
  }
  return out;
}

StructureTensor structure_tensor_from_json(const Json& j) {
  if (!j.is_array()) throw ScenarioError("structure constants must be a nested [n][n][n] list");
  const size_t n = j.size();
  StructureTensor c(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (size_t a = 0; a < n; ++a) {
    if (!j[a].is_array() || j[a].size() != n)
      throw DimensionMismatch("structure constants: row " + std::to_string(a) + " has wrong length");
    for (size_t b = 0; b < n; ++b) {
      if (!j[a][b].is_array() || j[a][b].size() != n)
        throw DimensionMismatch("structure constants: entry [" + std::to_string(a) + "][" +
                                std::to_string(b) + "] has wrong length");
      for (size_t k = 0; k < n; ++k) {
        if (!j[a][b][k].is_number()) throw ScenarioError("structure constants must be numbers");
        c[a][b][k] = j[a][b][k].get<double>();
      }
    }
  }
  return c;
}

Json structure_tensor_to_json(const StructureTensor& c) {
  Json out = Json::array();
  for (const auto& plane : c) {
    Json p = Json::array();
    for (const auto& row : plane) p.push_back(row);
    out.push_back(p);
  }
  return out;
}

namespace {

Term term_from_json(const Json& t, int num_vars) {
  if (!t.is_object()) throw ScenarioError("polynomial term must be an object");
  for (auto it = t.begin(); it != t.end(); ++it)
    if (it.key() != "monomial" && it.key() != "coeff")
      throw ScenarioError("unknown key '" + it.key() + "' in polynomial term");
  if (!t.contains("monomial") || !t.contains("coeff"))
    throw ScenarioError("polynomial term needs 'monomial' and 'coeff'");
  const Json& mono = t["monomial"];
  if (!mono.is_array() || static_cast<int>(mono.size()) != num_vars)
    throw DimensionMismatch("monomial has " + std::to_string(mono.size()) + " exponents, expected " +
                            std::to_string(num_vars));
  Term term;
  for (const auto& e : mono) {
    if (!e.is_number_integer() || e.get<int>() < 0)
      throw ScenarioError("monomial exponents must be nonnegative integers");
    term.exponents.push_back(e.get<int>());
  }
  if (!t["coeff"].is_number()) throw ScenarioError("coeff must be a number");
  term.coeff = t["coeff"].get<double>();
  return term;
}

}  // namespace

Polynomial polynomial_from_json(const Json& j, int num_vars) {
  if (j.is_number()) return Polynomial::constant(num_vars, j.get<double>());
  std::vector<Term> terms;
  if (j.is_object()) {
    terms.push_back(term_from_json(j, num_vars));
  } else if (j.is_array()) {
    for (const auto& t : j) terms.push_back(term_from_json(t, num_vars));
  } else {
    throw ScenarioError("polynomial must be a number or a list of monomial terms");
  }
  return Polynomial(num_vars, std::move(terms));
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const Term& t : p.terms()) out.push_back({{"monomial", t.exponents}, {"coeff", t.coeff}});
  return out;
}

PolyMatrix poly_matrix_from_json(const Json& j, int rows, int cols, int num_vars) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw DimensionMismatch("expected " + std::to_string(rows) + " rows of polynomials");
  PolyMatrix out(rows, cols, num_vars);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw DimensionMismatch("row " + std::to_string(r) + ": expected " + std::to_string(cols) +
                              " entries");
    for (int c = 0; c < cols; ++c) out(r, c) = polynomial_from_json(j[r][c], num_vars);
  }
  return out;
}

Mat matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw DimensionMismatch("expected a " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " matrix");
  Mat out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw DimensionMismatch("matrix row " + std::to_string(r) + " has wrong length");
    for (int c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ScenarioError("matrix entries must be numbers");
      out(r, c) = j[r][c].get<double>();
    }
  }
  return out;
}

Vec vector_from_json(const Json& j, int size) {
  if (!j.is_array() || (size >= 0 && static_cast<int>(j.size()) != size))
    throw DimensionMismatch("expected a vector of length " + std::to_string(size));
  Vec out(static_cast<long>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ScenarioError("vector entries must be numbers");
    out[static_cast<long>(i)] = j[i].get<double>();
  }
  return out;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (long r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Json reduction_report_to_json(const ReductionReport& r) {
  Json weights = Json::array();
  for (const auto& w : r.weights)
    weights.push_back({{"weight", w.weight}, {"real_dim", w.real_dim}, {"sym2_invariants", w.sym2_invariants}});
  Json iso = Json::array();
  for (const auto& c : r.isotypic)
    iso.push_back({{"casimir_eigenvalue", c.eigenvalue}, {"multiplicity", c.multiplicity}, {"spin", c.spin}});
  Json out;
  out["dim_g"] = r.dim_g;
  out["dim_c"] = r.dim_c;
  out["dim_c0"] = r.dim_c0;
  out["dim_idealizer"] = r.dim_idealizer;
  out["dim_gtilde"] = r.dim_gtilde;
  out["dim_gtilde_center"] = r.dim_gtilde_center;
  out["dim_gtilde_derived"] = r.dim_gtilde_derived;
  out["weights"] = weights;
  out["cross_invariants"] = r.cross_invariants;
  out["dim_s2_invariants"] = r.dim_s2_invariants;
  out["block_dims"] = r.block_dims();
  out["dim_gtilde_invariants"] = r.dim_gtilde_invariants;
  out["isotypic"] = iso;
  out["residuals"] = {{"gtilde_jacobi", r.gtilde_jacobi_residual},
                      {"duality", r.duality_residual},
                      {"annihilation", r.annihilation_residual},
                      {"su2_relations", r.su2_relation_residual}};
  return out;
}

std::string reduction_report_table(const ReductionReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) {
    os << "  " << k << std::string(k.size() < 28 ? 28 - k.size() : 1, ' ') << v << '\n';
  };
  os << "so3 + su3, c = span(e3 - 2 sqrt(3) l8)\n";
  row("dim g", std::to_string(r.dim_g));
  row("dim c", std::to_string(r.dim_c));
  row("dim c0", std::to_string(r.dim_c0));
  for (const auto& w : r.weights)
    row("weight " + std::to_string(w.weight), "real dim " + std::to_string(w.real_dim) +
                                                   ", S2 invariants " + std::to_string(w.sym2_invariants));
  row("cross invariants", std::to_string(r.cross_invariants));
  row("dim S2(c0)^c", std::to_string(r.dim_s2_invariants));
  row("dim idealizer", std::to_string(r.dim_idealizer));
  row("dim g~", std::to_string(r.dim_gtilde) + " (center " + std::to_string(r.dim_gtilde_center) +
                    ", derived " + std::to_string(r.dim_gtilde_derived) + ")");
  row("dim g~ invariants", std::to_string(r.dim_gtilde_invariants));
  std::string iso;
  for (const auto& c : r.isotypic) {
    if (!iso.empty()) iso += ", ";
    iso += "j=" + format_double(std::round(c.spin * 2.0) / 2.0) + ": " + std::to_string(c.multiplicity);
  }
  row("su(2) isotypic", iso);
  char buf[160];
  std::snprintf(buf, sizeof buf, "jacobi %.2e, duality %.2e, annihilation %.2e, su2 %.2e",
                r.gtilde_jacobi_residual, r.duality_residual, r.annihilation_residual,
                r.su2_relation_residual);
  row("residuals", buf);
  return os.str();
}

}  // namespace swkit
