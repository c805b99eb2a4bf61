#pragma once

#include "swkit/lie_algebra.hpp"

#include <string>
#include <vector>

namespace swkit {

struct LinearRep {
  int dim = 0;
  std::vector<Mat> generators;

  /// Largest distance of a generator commutator from the generator span.
  double closure_residual() const;
};

struct InvariantSpace {
  int ambient_dim = 0;
  Mat basis;  // orthonormal columns
  int dim() const { return static_cast<int>(basis.cols()); }
  /// Largest |G b| over generators G and basis vectors b.
  double annihilation_residual(const LinearRep& rep) const;
};

/// Annihilator of c in g*, as a subspace of coordinate vectors in the dual
/// basis.
Subspace annihilator(const LieAlgebra& g, const Subspace& c);

struct QuotientActions {
  LinearRep on_quotient;     // g/c
  LinearRep on_annihilator;  // c^0
  /// Orthonormal basis of the orthogonal complement of c. It represents
  /// g/c and spans c^0 in the dual basis.
  Mat basis;
  /// max_a |G_{c^0,a} + G_{g/c,a}^T|.
  double duality_residual = 0.0;
};

QuotientActions induced_quotient_action(const LieAlgebra& g, const Subspace& c,
                                        double tol = 1e-10);
/// Same, with the complement basis Q (orthonormal columns spanning c-perp)
/// supplied by the caller.
QuotientActions induced_quotient_action(const LieAlgebra& g, const Subspace& c, const Mat& Q,
                                        double tol = 1e-10);

/// Coadjoint action of an arbitrary algebra element on c^0 in the basis Q;
/// xi must normalize c.
Mat annihilator_action(const LieAlgebra& g, const Mat& Q, const Vec& xi);

/// Sorted multi-indices of degree k in dim variables (basis of S^k).
std::vector<std::vector<int>> monomial_basis(int dim, int k);
Mat sym_power_matrix(const Mat& G, int k);
LinearRep sym_power_rep(const LinearRep& rep, int k);
/// G1 (x) I + I (x) G2 on V1 (x) V2.
LinearRep tensor_rep(const LinearRep& a, const LinearRep& b);

InvariantSpace invariant_subspace(const LinearRep& rep, double rel_tol = 1e-9);
/// B^T G B for each generator, B the orthonormal basis of an invariant
/// subspace of the action.
LinearRep restrict_rep(const LinearRep& rep, const Mat& B);

struct IsotypicComponent {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  double spin = 0.0;
};

/// Eigen-decomposition of J1^2 + J2^2 + J3^2 on the space; the triple must
/// satisfy [J_i, J_j] = eps_ijk J_k there to 1e-8.
std::vector<IsotypicComponent> casimir_spectrum(const LinearRep& triple, const InvariantSpace& space);

struct WeightBlock {
  int weight = 0;
  int real_dim = 0;
  int sym2_invariants = 0;
};

struct ReductionReport {
  int dim_g = 0;
  int dim_c = 0;
  int dim_c0 = 0;
  int dim_idealizer = 0;
  int dim_gtilde = 0;
  int dim_gtilde_center = 0;
  int dim_gtilde_derived = 0;
  double gtilde_jacobi_residual = 0.0;
  std::vector<WeightBlock> weights;
  int cross_invariants = 0;
  int dim_s2_invariants = 0;
  int dim_gtilde_invariants = 0;
  std::vector<IsotypicComponent> isotypic;
  double duality_residual = 0.0;
  double annihilation_residual = 0.0;
  double su2_relation_residual = 0.0;

  std::vector<int> block_dims() const;
};

/// Full pipeline on so3 + su3 with c spanned by e3 - 2 sqrt(3) l8. An
/// optional orthogonal matrix rotates the c^0 basis.
ReductionReport manton_report(const Mat* c0_rotation = nullptr);

}  // namespace swkit
