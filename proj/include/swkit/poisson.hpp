#pragma once

#include "swkit/lie_algebra.hpp"
#include "swkit/polynomial.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swkit {

/// Central-difference step sizes, relative to max(1, |z_i|).
struct FdSteps {
  double gradient = 6.0554544523933395e-06;  // eps^(1/3)
  double hessian = 1.2207031250000000e-04;   // eps^(1/4)
};

/// Real function on R^d with gradient and Hessian. Polynomial fields carry
/// exact derivatives; callables fall back to central differences unless
/// derivative callables are supplied.
class ScalarField {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  using HessFn = std::function<Mat(const Vec&)>;

  ScalarField() = default;
  static ScalarField from_polynomial(Polynomial p);
  static ScalarField from_function(int dim, ValueFn value, GradFn grad = nullptr,
                                   HessFn hess = nullptr, FdSteps steps = {});

  int dim() const { return dim_; }
  bool analytic() const { return static_cast<bool>(grad_); }
  const std::optional<Polynomial>& polynomial() const { return poly_; }

  double value(const Vec& z) const;
  double operator()(const Vec& z) const { return value(z); }
  Vec grad(const Vec& z) const;
  Mat hess(const Vec& z) const;

  ScalarField scaled(double s) const;
  void set_fd_steps(FdSteps steps) { steps_ = steps; }

 private:
  int dim_ = 0;
  ValueFn value_;
  GradFn grad_;
  HessFn hess_;
  std::optional<Polynomial> poly_;
  FdSteps steps_;
};

Vec fd_gradient(const ScalarField::ValueFn& f, const Vec& z, double rel_step);
Mat fd_hessian(const ScalarField::ValueFn& f, const Vec& z, double rel_step);

/// Antisymmetric n x n matrix of polynomials w_ab(r) in the transverse
/// coordinates. Vanishing at r = 0 is checked by linearize_transverse.
class StructureFunctionField {
 public:
  StructureFunctionField() = default;
  explicit StructureFunctionField(PolyMatrix w);
  /// w_ab(r) = sum_k c[a][b][k] r_k.
  static StructureFunctionField linear(const LieAlgebra& g);

  int n() const { return w_.rows(); }
  const PolyMatrix& w() const { return w_; }
  Mat eval(const Vec& r) const { return w_.eval(r); }
  /// Largest |w_ab(0)|.
  double value_at_origin() const;

 private:
  PolyMatrix w_;
};

enum class StructureKind { canonical, lie_poisson, darboux_product, custom };
std::string kind_name(StructureKind k);

class PoissonStructure {
 public:
  using BivectorFn = std::function<Mat(const Vec&)>;

  static PoissonStructure canonical(int m);
  static PoissonStructure lie_poisson(const LieAlgebra& g);
  static PoissonStructure darboux_product(int m, const LieAlgebra& g);
  static PoissonStructure darboux_product(int m, const StructureFunctionField& field);
  /// Polynomial bivector: derivatives are exact.
  static PoissonStructure custom(const PolyMatrix& w);
  /// Callable bivector: derivatives by central differences.
  static PoissonStructure custom(int d, BivectorFn w);

  int dim() const { return d_; }
  StructureKind kind() const { return kind_; }
  /// Canonical block size (canonical and darboux_product), else 0.
  int m() const { return m_; }
  /// Transverse dimension (lie_poisson and darboux_product), else 0.
  int n() const { return n_; }
  const std::optional<LieAlgebra>& algebra() const { return algebra_; }
  const std::optional<StructureFunctionField>& transverse_field() const { return field_; }
  std::vector<std::string> coordinate_names;

  Mat bivector_at(const Vec& z) const;
  /// dW/dz_l for l = 0..d-1.
  std::vector<Mat> bivector_derivatives(const Vec& z) const;

 private:
  PoissonStructure() = default;
  void check_point(const Vec& z) const;

  StructureKind kind_ = StructureKind::custom;
  int d_ = 0;
  int m_ = 0;
  int n_ = 0;
  std::optional<LieAlgebra> algebra_;
  std::optional<StructureFunctionField> field_;
  std::optional<PolyMatrix> custom_poly_;
  BivectorFn custom_fn_;
};

Mat bivector_at(const PoissonStructure& P, const Vec& z);
double poisson_bracket(const PoissonStructure& P, const ScalarField& f, const ScalarField& g,
                       const Vec& z);
Vec hamiltonian_vector(const PoissonStructure& P, const ScalarField& H, const Vec& z);

struct JacobiPointReport {
  double residual = 0.0;
  int i = 0, j = 0, k = 0;
};
/// Cyclic Jacobiator of the bivector at z; indices of the worst triple.
JacobiPointReport jacobi_report_at(const PoissonStructure& P, const Vec& z);
double jacobi_residual_at(const PoissonStructure& P, const Vec& z);
double casimir_residual(const PoissonStructure& P, const ScalarField& f,
                        const std::vector<Vec>& samples);
LieAlgebra linearize_transverse(const PoissonStructure& P, double jacobi_tol = 1e-8);

/// Casimirs tracked by default: coordinates along central directions, and
/// |r|^2 when the Euclidean form is ad-invariant and the algebra is not
/// abelian. Canonical, custom and field-valued structures get none.
std::vector<ScalarField> default_casimirs(const PoissonStructure& P,
                                          std::vector<std::string>* names = nullptr);

}  // namespace swkit
