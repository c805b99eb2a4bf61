#pragma once

#include "swkit/polynomial.hpp"

#include <string>
#include <vector>

namespace swkit {

/// Dense rank-3 tensor c[a][b][k] with [e_a, e_b] = sum_k c[a][b][k] e_k.
using StructureTensor = std::vector<std::vector<std::vector<double>>>;

/// Linear subspace of R^n carried by a basis (columns).
class Subspace {
 public:
  Subspace() = default;
  Subspace(int ambient_dim, Mat basis, double rank_tol = 1e-10);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }
  /// Orthonormal basis of the same span.
  Mat orthonormal() const;
  /// Orthogonal projector onto the span.
  Mat projector() const;
  /// Largest distance of a basis vector of `other` from this span.
  double containment_residual(const Subspace& other) const;
  bool contains(const Subspace& other, double tol = 1e-10) const;

  static Subspace whole(int n);
  static Subspace zero(int n);
  static Subspace span(const Vec& v);

 private:
  int ambient_dim_ = 0;
  Mat basis_;
};

struct JacobiReport {
  double residual = 0.0;
  int a = 0, b = 0, c = 0;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Validates antisymmetry (exact) and the Jacobi identity against tol.
  LieAlgebra(int n, std::vector<double> c, double tol = 1e-12,
             std::vector<std::string> labels = {});

  /// Antisymmetry is still enforced; the Jacobi identity is not.
  static LieAlgebra unchecked(int n, std::vector<double> c, double tol = 1e-12,
                              std::vector<std::string> labels = {});

  int dim() const { return n_; }
  double tol() const { return tol_; }
  double c(int a, int b, int k) const { return c_[(a * n_ + b) * n_ + k]; }
  const std::vector<double>& constants() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }
  StructureTensor tensor() const;

  Vec bracket(const Vec& x, const Vec& y) const;
  Mat ad(const Vec& x) const;
  Mat coad(const Vec& x) const;
  Mat ad_basis(int a) const;
  /// Same vector space with the bracket negated.
  LieAlgebra opposite() const;
  bool is_abelian() const;
  /// Basis indices a with [e_a, .] = 0.
  std::vector<int> central_basis_indices() const;
  /// True when every ad(e_a) is antisymmetric, i.e. the Euclidean form is
  /// ad-invariant.
  bool euclidean_invariant(double tol = 1e-12) const;

 private:
  int n_ = 0;
  std::vector<double> c_;
  double tol_ = 1e-12;
  std::vector<std::string> labels_;
};

struct AdCoad {
  Mat ad;
  Mat coad;
};

LieAlgebra build_algebra(const std::string& preset, double tol = 1e-12);
LieAlgebra build_algebra(const StructureTensor& c, double tol = 1e-12);
StructureTensor preset_tensor(const std::string& preset);
std::vector<std::string> preset_names();

Vec bracket_vec(const LieAlgebra& g, const Vec& x, const Vec& y);
AdCoad ad_coad(const LieAlgebra& g, const Vec& x);
double jacobi_residual(const LieAlgebra& g);
JacobiReport jacobi_report(int n, const std::vector<double>& c);
LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2);
Subspace idealizer(const LieAlgebra& g, const Subspace& c);
/// tr(ad e_a ad e_b).
Mat killing_form(const LieAlgebra& g);

struct QuotientAlgebra {
  LieAlgebra algebra;
  /// Columns: representatives in g of the quotient basis (orthonormal, inside
  /// N and orthogonal to c).
  Mat representatives;
};

QuotientAlgebra quotient_with_basis(const LieAlgebra& g, const Subspace& N,
                                    const Subspace& c, double tol = 1e-10);
LieAlgebra quotient(const LieAlgebra& g, const Subspace& N, const Subspace& c,
                    double tol = 1e-10);

/// Basis of span{[x, y] : x, y in g}.
Subspace derived_algebra(const LieAlgebra& g);
/// Basis of the center.
Subspace center(const LieAlgebra& g);

}  // namespace swkit
