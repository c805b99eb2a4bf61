#pragma once

#include "swkit/dynamics.hpp"
#include "swkit/lie_algebra.hpp"
#include "swkit/polynomial.hpp"
#include "swkit/sw_extract.hpp"

#include <complex>
#include <string>
#include <vector>

namespace swkit {

using CMat = Eigen::MatrixXcd;

/// Matrix exponential by scaling and squaring with a Taylor kernel.
CMat expm(const CMat& X);

class MatrixGroup {
 public:
  std::string name;
  int matrix_dim = 0;
  LieAlgebra algebra;
  std::vector<CMat> basis;

  int n() const { return algebra.dim(); }
  CMat hat(const Vec& xi) const;
  /// Basis coordinates of an algebra element, via the Gram matrix of
  /// Re tr(X^H Y).
  Vec coords(const CMat& X) const;
  CMat exp(const Vec& xi) const;
  CMat reproject(const CMat& g) const;
  CMat identity() const { return CMat::Identity(matrix_dim, matrix_dim); }
  /// Ad(g): column b holds the coordinates of g E_b g^{-1}.
  Mat Ad(const CMat& g) const;
  /// Largest deviation of [E_a, E_b] from sum_k c[a][b][k] E_k.
  double commutator_residual() const;
  /// Distance from the group: |g^H g - I| (and |det g - 1| for su2).
  double group_residual(const CMat& g) const;

  Mat gram_inv;
};

MatrixGroup build_group(const std::string& name);

struct KKMetricSpec {
  int m = 0;
  PolyMatrix gamma_inv;  // m x m in x
  PolyMatrix A;          // m x n in x
  Mat iota_inv;          // n x n
  MatrixGroup group;

  int n() const { return group.n(); }
  void validate() const;
};

struct KKState {
  Vec x;
  CMat g;
  Vec p;
  Vec mu;
};

struct WongState {
  Vec x;
  Vec p;
  Vec r;
  /// (x, p, r) stacked.
  Vec stacked() const;
};

enum class KKFormulation { canonical, geodesic };

struct KKTrajectory {
  std::vector<double> times;
  std::vector<KKState> states;
  std::vector<double> energy;
  std::vector<Vec> moments;
};

/// Evaluates the Kaluza-Klein Hamiltonian and its equations of motion.
class KKSystem {
 public:
  explicit KKSystem(KKMetricSpec spec);

  const KKMetricSpec& spec() const { return spec_; }
  int packed_dim() const { return 2 * spec_.m + 2 * gdim2_ + spec_.n(); }

  /// Spatial charge nu = Ad(g)^{-T} mu.
  Vec spatial_charge(const CMat& g, const Vec& mu) const;
  double hamiltonian(const KKState& s) const;

  /// Canonical packing (x, p, g entries as (re, im) row-major, mu).
  Vec pack(const KKState& s) const;
  KKState unpack(const Vec& z) const;
  Vec canonical_rhs(const Vec& z) const;

  /// Geodesic packing (x, v, g, Omega) with v = dx/dt and Omega the body
  /// angular velocity.
  Vec to_geodesic(const KKState& s) const;
  KKState from_geodesic(const Vec& w) const;
  Vec geodesic_rhs(const Vec& w) const;

  /// Replaces the group block of a packed state by its reprojection.
  void reproject_packed(Vec& z) const;

 private:
  CMat unpack_group(const Vec& z, int offset) const;
  void pack_group(const CMat& g, Vec& z, int offset) const;

  KKMetricSpec spec_;
  std::vector<PolyMatrix> dG_;
  std::vector<PolyMatrix> dA_;
  Mat iota_;
  bool iota_invertible_ = false;
  int gdim2_ = 0;
};

double kk_hamiltonian(const KKMetricSpec& spec, const KKState& s);

KKTrajectory integrate_kk(const KKMetricSpec& spec, const KKState& s0, const IntegratorConfig& cfg,
                          int reproject_every = 16,
                          KKFormulation formulation = KKFormulation::canonical);

/// Momentum of the lifted right action of G: the body momentum mu.
Vec moment_map(const MatrixGroup& group, const KKState& s);

/// (x, p, r = Ad(g)^{-T} mu).
WongState project_kk(const KKMetricSpec& spec, const KKState& s);

/// Wong fields (gamma_inv, A) of the metric data as quadratic-gauge fields, with
/// chi_inv set to iota_inv.
QuadraticGaugeFields kk_gauge_fields(const KKMetricSpec& spec);

/// Pull-back of K0 to (x, p, r) at g = identity, where mu = r.
Polynomial kk_pullback_polynomial(const KKMetricSpec& spec);

struct KKSplit {
  Polynomial wong;     // on (x, p, r)
  Polynomial vertical; // on mu
  double residual = 0.0;
  double ad_invariance_residual = 0.0;
  std::string type;
};

/// ad-invariance residual of iota_inv: max_a |ad(e_a) Q + Q ad(e_a)^T|.
double ad_invariance_residual(const LieAlgebra& g, const Mat& Q);

KKSplit split_kk_hamiltonian(const KKMetricSpec& spec, const std::vector<KKState>& samples);

/// Random states around the origin for split checks.
std::vector<KKState> sample_kk_states(const KKMetricSpec& spec, int count, std::uint64_t seed);

}  // namespace swkit
