#pragma once

#include "swkit/lie_algebra.hpp"
#include "swkit/poisson.hpp"
#include "swkit/polynomial.hpp"

#include <functional>
#include <vector>

namespace swkit {

/// Fiber Hessian of H at (x, 0, 0) in coordinates (x, p, r).
struct VerticalJet {
  Vec x;
  int m = 0;
  int n = 0;
  Mat Hpp;
  Mat Hpr;
  Mat Hrr;
  double grad_norm = 0.0;

  /// [[Hpp, Hpr], [Hrp, Hrr]].
  Mat block() const;
};

struct SWFields {
  Mat gamma_inv;
  Mat A;
  Mat chi_inv;
  bool chi_degenerate = false;
  double gamma_condition = 1.0;

  /// [[G, G A], [A^T G, chi_inv + A^T G A]] with G = gamma_inv.
  Mat rebuild() const;
};

VerticalJet vertical_jet(const ScalarField& H, const Vec& x, int m, int n, double tol = 1e-10);
SWFields extract_fields(const VerticalJet& jet, double max_condition = 1e12);

/// Deletes the listed r-indices (0-based) from Hpr and Hrr.
VerticalJet reduce_jet(const VerticalJet& jet, const std::vector<int>& constrained);

/// gamma_inv (m x m), A (m x n) and chi_inv (n x n) as polynomials in x.
struct QuadraticGaugeFields {
  int m = 0;
  int n = 0;
  PolyMatrix gamma_inv;
  PolyMatrix A;
  PolyMatrix chi_inv;

  SWFields at(const Vec& x) const;
  void validate() const;
};

using SWFieldFn = std::function<SWFields(const Vec&)>;
using JetFieldFn = std::function<VerticalJet(const Vec&)>;

/// (1/2)(p + A r)^T gamma_inv (p + A r) as a polynomial in (x, p, r).
Polynomial wong_polynomial(const QuadraticGaugeFields& f);
/// Wong part plus (1/2) r^T chi_inv r.
Polynomial einstein_mayer_polynomial(const QuadraticGaugeFields& f);
/// Part of H of total degree 2 in the fiber variables (p, r).
Polynomial vertical_quadratic_part(const Polynomial& H, int m, int n);

ScalarField wong_hamiltonian(const QuadraticGaugeFields& f, const LieAlgebra& g);
ScalarField wong_hamiltonian(const SWFieldFn& fields, int m, int n);
ScalarField einstein_mayer_hamiltonian(const QuadraticGaugeFields& f, const LieAlgebra& g);
ScalarField einstein_mayer_hamiltonian(const JetFieldFn& jets, int m, int n);
/// Same, for a polynomial H on (x, p, r). The gradient is exact: the
/// x-derivatives go through gamma_inv, A and chi_inv extracted at x.
ScalarField einstein_mayer_hamiltonian(const Polynomial& H, int m, int n, double max_condition = 1e12);

/// max over samples of |H2 - (H1 + (1/2) r^T chi_inv r)| / max(1, |H2|), with
/// all three assembled pointwise from the jet field.
double schur_split_residual(const JetFieldFn& jets, int m, int n, const std::vector<Vec>& samples);

/// Richardson-extrapolated (1/2) d^2/de^2 H(x, e v) at e = 0, from the
/// symmetric second difference at steps eps, eps/2, eps/4.
double fd_vertical_quadratic(const ScalarField& H, const Vec& x, const Vec& v, double eps = 1e-2);

/// Relative mismatch between the jet block and the block rebuilt from fields.
double reconstruction_residual(const VerticalJet& jet, const SWFields& f);

}  // namespace swkit
