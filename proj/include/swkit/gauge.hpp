#pragma once

#include "swkit/lie_algebra.hpp"
#include "swkit/polynomial.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace swkit {

/// Gauge potential A^a_mu(x): row mu, column a, for the algebra indexed by a.
class GaugePotentialField {
 public:
  using ValueFn = std::function<Mat(const Vec&)>;
  /// Returns dA/dx_rho for rho = 0..m-1.
  using JacobianFn = std::function<std::vector<Mat>(const Vec&)>;

  GaugePotentialField() = default;
  GaugePotentialField(PolyMatrix A, LieAlgebra g);
  GaugePotentialField(int m, LieAlgebra g, ValueFn value, JacobianFn jacobian);

  int m() const { return m_; }
  int n() const { return g_.dim(); }
  const LieAlgebra& algebra() const { return g_; }
  const std::optional<PolyMatrix>& polynomial() const { return poly_; }

  Mat value(const Vec& x) const;
  std::vector<Mat> jacobian(const Vec& x) const;

 private:
  int m_ = 0;
  LieAlgebra g_;
  std::optional<PolyMatrix> poly_;
  std::vector<PolyMatrix> poly_jac_;
  ValueFn value_;
  JacobianFn jacobian_;
};

/// Phi[a](mu, nu).
using CurvatureValue = std::vector<Mat>;

/// Phi^a_{mu nu} = d_mu A^a_nu - d_nu A^a_mu + sum c[b][d][a] A^b_mu A^d_nu.
CurvatureValue curvature_from(const LieAlgebra& g, const Mat& A, const std::vector<Mat>& dA);
CurvatureValue curvature_at(const GaugePotentialField& A, const Vec& x);

/// (R, B) as functions of the old base coordinates y, with their
/// derivatives, and a constant invertible P. New coordinates u satisfy
/// y = P^{-T} u.
struct GaugeTransition {
  std::function<Mat(const Vec&)> R;
  std::function<std::vector<Mat>(const Vec&)> dR;
  std::function<Mat(const Vec&)> B;
  std::function<std::vector<Mat>(const Vec&)> dB;
  Mat P;
};

/// Largest |R c(x, y) - c(Rx, Ry)| over basis pairs.
double automorphism_residual(const LieAlgebra& g, const Mat& R);

/// A~(u)^T = R(y)^{-1} (A(y)^T - B(y)^T P^{-1} Omega) P^{-T}, y = P^{-T} u,
/// with Omega the m x m base symplectic block. R is checked to be an
/// automorphism at every evaluation point.
GaugePotentialField gauge_transform(const GaugePotentialField& A, const GaugeTransition& t,
                                    const Mat& omega, double automorphism_tol = 1e-8);

struct StructureBianchiResidual {
  double structure = 0.0;
  double bianchi = 0.0;
};

/// Structure residual: analytic curvature against curvature rebuilt from a
/// finite-difference Jacobian of A. Bianchi residual: the cyclic sum
/// d_mu Phi_{nu sigma} + [A_mu, Phi_{nu sigma}], with dPhi by central
/// differences of the analytic curvature.
StructureBianchiResidual structure_bianchi_residual(const GaugePotentialField& A, const Vec& x,
                                                    double fd_step = 6.0554544523933395e-06);

}  // namespace swkit
