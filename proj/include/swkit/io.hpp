#pragma once

#include "swkit/dynamics.hpp"
#include "swkit/kk_bundle.hpp"
#include "swkit/lie_algebra.hpp"
#include "swkit/polynomial.hpp"
#include "swkit/reduction_rep.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swkit {

using Json = nlohmann::ordered_json;

/// 17 significant digits, "%.17g".
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void ensure_directory(const std::string& path);
std::string join_path(const std::string& dir, const std::string& file);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Header t,z1,...,zd,H,cas1,...
std::string trajectory_csv(const Trajectory& tr);
/// Header t,x1..,g11_re,g11_im,..,p1..,mu1..,K0 with g row-major.
std::string kk_trajectory_csv(const KKTrajectory& tr, const KKMetricSpec& spec);

/// Dense [n][n][n] nested list, c[a][b][k].
StructureTensor structure_tensor_from_json(const Json& j);
Json structure_tensor_to_json(const StructureTensor& c);

/// A number is a constant; otherwise a list of {"monomial": [...], "coeff": c}
/// (a single such object is accepted as a one-term list).
Polynomial polynomial_from_json(const Json& j, int num_vars);
Json polynomial_to_json(const Polynomial& p);

/// rows x cols nested list of polynomial entries.
PolyMatrix poly_matrix_from_json(const Json& j, int rows, int cols, int num_vars);
Mat matrix_from_json(const Json& j, int rows, int cols);
Vec vector_from_json(const Json& j, int size);
Json vector_to_json(const Vec& v);
Json matrix_to_json(const Mat& m);

Json reduction_report_to_json(const ReductionReport& r);
std::string reduction_report_table(const ReductionReport& r);

}  // namespace swkit
