#include "swkit/kk_bundle.hpp"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace swkit {

using cd = std::complex<double>;

CMat expm(const CMat& X) {
  const int d = static_cast<int>(X.rows());
  const double norm = X.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMat Y = X / std::ldexp(1.0, s);
  CMat term = CMat::Identity(d, d);
  CMat out = CMat::Identity(d, d);
  for (int k = 1; k <= 18; ++k) {
    term = term * Y / static_cast<double>(k);
    out += term;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

// ---------------------------------------------------------------------------
// MatrixGroup
// ---------------------------------------------------------------------------

CMat MatrixGroup::hat(const Vec& xi) const {
  if (xi.size() != n()) throw DimensionMismatch("algebra vector has wrong length");
  CMat X = CMat::Zero(matrix_dim, matrix_dim);
  for (int a = 0; a < n(); ++a) X += xi[a] * basis[a];
  return X;
}

Vec MatrixGroup::coords(const CMat& X) const {
  Vec b(n());
  for (int a = 0; a < n(); ++a) b[a] = (basis[a].adjoint() * X).trace().real();
  return gram_inv * b;
}

CMat MatrixGroup::exp(const Vec& xi) const {
  if (xi.size() != n()) throw DimensionMismatch("algebra vector has wrong length");
  if (name == "u1") {
    CMat g(1, 1);
    g(0, 0) = std::polar(1.0, xi[0]);
    return g;
  }
  const double theta = xi.norm();
  const CMat K = hat(xi);
  if (name == "so3") {
    double a, b;
    if (theta < 1e-4) {
      const double t2 = theta * theta;
      a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
      b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    } else {
      a = std::sin(theta) / theta;
      b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    return CMat::Identity(3, 3) + a * K + b * K * K;
  }
  if (name == "su2") {
    const double c = std::cos(0.5 * theta);
    double s;
    if (theta < 1e-4) {
      const double t2 = theta * theta;
      s = 1.0 - t2 / 24.0 + t2 * t2 / 1920.0;
    } else {
      s = 2.0 * std::sin(0.5 * theta) / theta;
    }
    return c * CMat::Identity(2, 2) + s * K;
  }
  return expm(K);
}

CMat MatrixGroup::reproject(const CMat& g) const {
  if (name == "u1") {
    CMat out(1, 1);
    out(0, 0) = g(0, 0) / std::abs(g(0, 0));
    return out;
  }
  if (name == "so3") {
    const Mat r = g.real();
    Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat U = svd.matrixU();
    const Mat V = svd.matrixV();
    if ((U * V.transpose()).determinant() < 0) U.col(2) *= -1.0;
    return (U * V.transpose()).cast<cd>();
  }
  Eigen::JacobiSVD<CMat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat u = svd.matrixU() * svd.matrixV().adjoint();
  if (name == "su2") u /= std::sqrt(u.determinant());
  return u;
}

Mat MatrixGroup::Ad(const CMat& g) const {
  const CMat ginv = g.inverse();
  Mat out(n(), n());
  for (int b = 0; b < n(); ++b) out.col(b) = coords(g * basis[b] * ginv);
  return out;
}

double MatrixGroup::commutator_residual() const {
  double worst = 0.0;
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b) {
      CMat lhs = basis[a] * basis[b] - basis[b] * basis[a];
      for (int k = 0; k < n(); ++k) lhs -= algebra.c(a, b, k) * basis[k];
      worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
  return worst;
}

double MatrixGroup::group_residual(const CMat& g) const {
  double r = (g.adjoint() * g - identity()).cwiseAbs().maxCoeff();
  if (name == "su2" || name == "so3") r = std::max(r, std::abs(g.determinant() - 1.0));
  if (name == "so3") r = std::max(r, g.imag().cwiseAbs().maxCoeff());
  return r;
}

MatrixGroup build_group(const std::string& name) {
  MatrixGroup G;
  G.name = name;
  const cd I(0.0, 1.0);
  if (name == "u1") {
    G.matrix_dim = 1;
    G.algebra = build_algebra("u1");
    CMat e(1, 1);
    e(0, 0) = I;
    G.basis = {e};
  } else if (name == "so3") {
    G.matrix_dim = 3;
    G.algebra = build_algebra("so3");
    CMat L1 = CMat::Zero(3, 3), L2 = CMat::Zero(3, 3), L3 = CMat::Zero(3, 3);
    L1(2, 1) = 1.0;
    L1(1, 2) = -1.0;
    L2(0, 2) = 1.0;
    L2(2, 0) = -1.0;
    L3(1, 0) = 1.0;
    L3(0, 1) = -1.0;
    G.basis = {L1, L2, L3};
  } else if (name == "su2") {
    G.matrix_dim = 2;
    G.algebra = build_algebra("su2");
    CMat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0.0, 1.0, 1.0, 0.0;
    s2 << 0.0, -I, I, 0.0;
    s3 << 1.0, 0.0, 0.0, -1.0;
    const cd f(0.0, -0.5);
    G.basis = {f * s1, f * s2, f * s3};
  } else {
    throw UnknownGroup("unknown matrix group '" + name + "'");
  }
  const int n = G.n();
  Mat gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gram(a, b) = (G.basis[a].adjoint() * G.basis[b]).trace().real();
  G.gram_inv = gram.inverse();
  return G;
}

// ---------------------------------------------------------------------------
// Spec and system
// ---------------------------------------------------------------------------

void KKMetricSpec::validate() const {
  if (m <= 0) throw InvalidParams("KK spec needs m >= 1");
  if (group.n() <= 0) throw InvalidParams("KK spec needs a group");
  if (gamma_inv.rows() != m || gamma_inv.cols() != m || gamma_inv.num_vars() != m)
    throw DimensionMismatch("gamma_inv must be m x m in m variables");
  if (A.rows() != m || A.cols() != n() || A.num_vars() != m)
    throw DimensionMismatch("A must be m x n in m variables");
  if (iota_inv.rows() != n() || iota_inv.cols() != n())
    throw DimensionMismatch("iota_inv must be n x n");
  if ((iota_inv - iota_inv.transpose()).cwiseAbs().maxCoeff() > 1e-14)
    throw InvalidParams("iota_inv must be symmetric");
  if (iota_inv.cwiseAbs().maxCoeff() > 0.0) {
    Eigen::SelfAdjointEigenSolver<Mat> es(iota_inv);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw SingularMetric("iota_inv must be positive definite (or zero for an absent term)");
  }
  const Mat G0 = gamma_inv.eval(Vec::Zero(m));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (G0 + G0.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0) throw SingularMetric("gamma_inv is not positive at x = 0");
}

Vec WongState::stacked() const {
  Vec z(x.size() + p.size() + r.size());
  z << x, p, r;
  return z;
}

KKSystem::KKSystem(KKMetricSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  for (int rho = 0; rho < spec_.m; ++rho) {
    dG_.push_back(spec_.gamma_inv.derivative(rho));
    dA_.push_back(spec_.A.derivative(rho));
  }
  gdim2_ = spec_.group.matrix_dim * spec_.group.matrix_dim;
  if (spec_.iota_inv.cwiseAbs().maxCoeff() > 0.0) {
    iota_ = spec_.iota_inv.inverse();
    iota_invertible_ = true;
  }
}

CMat KKSystem::unpack_group(const Vec& z, int offset) const {
  const int D = spec_.group.matrix_dim;
  CMat g(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const int k = offset + 2 * (i * D + j);
      g(i, j) = cd(z[k], z[k + 1]);
    }
  return g;
}

void KKSystem::pack_group(const CMat& g, Vec& z, int offset) const {
  const int D = spec_.group.matrix_dim;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const int k = offset + 2 * (i * D + j);
      z[k] = g(i, j).real();
      z[k + 1] = g(i, j).imag();
    }
}

Vec KKSystem::spatial_charge(const CMat& g, const Vec& mu) const {
  const Mat Ad = spec_.group.Ad(g);
  return Ad.transpose().partialPivLu().solve(mu);
}

double KKSystem::hamiltonian(const KKState& s) const {
  const Mat G = spec_.gamma_inv.eval(s.x);
  const Mat A = spec_.A.eval(s.x);
  const Vec nu = spatial_charge(s.g, s.mu);
  const Vec pi = s.p + A * nu;
  return 0.5 * pi.dot(G * pi) + 0.5 * s.mu.dot(spec_.iota_inv * s.mu);
}

Vec KKSystem::pack(const KKState& s) const {
  const int m = spec_.m;
  Vec z(packed_dim());
  z.head(m) = s.x;
  z.segment(m, m) = s.p;
  pack_group(s.g, z, 2 * m);
  z.tail(spec_.n()) = s.mu;
  return z;
}

KKState KKSystem::unpack(const Vec& z) const {
  const int m = spec_.m;
  KKState s;
  s.x = z.head(m);
  s.p = z.segment(m, m);
  s.g = unpack_group(z, 2 * m);
  s.mu = z.tail(spec_.n());
  return s;
}

void KKSystem::reproject_packed(Vec& z) const {
  const int off = 2 * spec_.m;
  pack_group(spec_.group.reproject(unpack_group(z, off)), z, off);
}

Vec KKSystem::canonical_rhs(const Vec& z) const {
  const int m = spec_.m;
  const int n = spec_.n();
  const LieAlgebra& alg = spec_.group.algebra;
  const KKState s = unpack(z);
  const Mat G = spec_.gamma_inv.eval(s.x);
  const Mat A = spec_.A.eval(s.x);
  const Mat Ad = spec_.group.Ad(s.g);
  const Vec nu = Ad.transpose().partialPivLu().solve(s.mu);
  const Vec pi = s.p + A * nu;
  const Vec v = G * pi;

  Vec out(packed_dim());
  out.head(m) = v;
  for (int rho = 0; rho < m; ++rho) {
    const Mat dG = dG_[rho].eval(s.x);
    const Mat dA = dA_[rho].eval(s.x);
    out[m + rho] = -0.5 * pi.dot(dG * pi) - (dA * nu).dot(v);
  }
  const Vec iota_mu = spec_.iota_inv * s.mu;
  const Vec Omega = Ad.partialPivLu().solve(A.transpose() * v) + iota_mu;
  pack_group(s.g * spec_.group.hat(Omega), out, 2 * m);
  // mu_a' = -sum c[a][b][k] mu_k (iota_inv mu)_b
  Vec mudot = Vec::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) mudot[a] -= alg.c(a, b, k) * s.mu[k] * iota_mu[b];
  out.tail(n) = mudot;
  return out;
}

Vec KKSystem::to_geodesic(const KKState& s) const {
  const int m = spec_.m;
  const Mat G = spec_.gamma_inv.eval(s.x);
  const Mat A = spec_.A.eval(s.x);
  const Mat Ad = spec_.group.Ad(s.g);
  const Vec nu = Ad.transpose().partialPivLu().solve(s.mu);
  const Vec v = G * (s.p + A * nu);
  const Vec Omega = Ad.partialPivLu().solve(A.transpose() * v) + spec_.iota_inv * s.mu;
  Vec w(packed_dim());
  w.head(m) = s.x;
  w.segment(m, m) = v;
  pack_group(s.g, w, 2 * m);
  w.tail(spec_.n()) = Omega;
  return w;
}

KKState KKSystem::from_geodesic(const Vec& w) const {
  if (!iota_invertible_) throw SingularMetric("geodesic formulation needs invertible iota_inv");
  const int m = spec_.m;
  KKState s;
  s.x = w.head(m);
  const Vec v = w.segment(m, m);
  s.g = unpack_group(w, 2 * m);
  const Vec Omega = w.tail(spec_.n());
  const Mat G = spec_.gamma_inv.eval(s.x);
  const Mat A = spec_.A.eval(s.x);
  const Mat Ad = spec_.group.Ad(s.g);
  s.mu = iota_ * (Omega - Ad.partialPivLu().solve(A.transpose() * v));
  const Vec nu = Ad.transpose().partialPivLu().solve(s.mu);
  s.p = G.partialPivLu().solve(v) - A * nu;
  return s;
}

Vec KKSystem::geodesic_rhs(const Vec& w) const {
  if (!iota_invertible_) throw SingularMetric("geodesic formulation needs invertible iota_inv");
  const int m = spec_.m;
  const int n = spec_.n();
  const LieAlgebra& alg = spec_.group.algebra;
  const Vec x = w.head(m);
  const Vec v = w.segment(m, m);
  const CMat g = unpack_group(w, 2 * m);
  const Vec Omega = w.tail(n);

  const Mat G = spec_.gamma_inv.eval(x);
  const Mat A = spec_.A.eval(x);
  std::vector<Mat> dG(m), dA(m);
  for (int rho = 0; rho < m; ++rho) {
    dG[rho] = dG_[rho].eval(x);
    dA[rho] = dA_[rho].eval(x);
  }
  const Mat Ad = spec_.group.Ad(g);
  const auto Adlu = Ad.partialPivLu();
  const Vec omega = A.transpose() * v;
  const Vec omega_body = Adlu.solve(omega);
  const Vec mu = iota_ * (Omega - omega_body);
  const Vec nu = Ad.transpose().partialPivLu().solve(mu);
  const Vec pi = G.partialPivLu().solve(v);

  const Vec nudot = alg.bracket(omega, nu);
  Vec pidot(m);
  for (int rho = 0; rho < m; ++rho) pidot[rho] = -0.5 * pi.dot(dG[rho] * pi) - (dA[rho] * nu).dot(v);
  Vec Gdot_pi = Vec::Zero(m);
  Vec dA_nu = Vec::Zero(m);
  Vec dAT_v = Vec::Zero(n);
  for (int rho = 0; rho < m; ++rho) {
    Gdot_pi += v[rho] * (dG[rho] * pi);
    dA_nu += v[rho] * (dA[rho] * nu);
    dAT_v += v[rho] * (dA[rho].transpose() * v);
  }
  pidot += dA_nu + A * nudot;
  const Vec vdot = Gdot_pi + G * pidot;

  const Vec iota_mu = spec_.iota_inv * mu;
  Vec mudot = Vec::Zero(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) mudot[a] -= alg.c(a, b, k) * mu[k] * iota_mu[b];
  const Vec omegadot = dAT_v + A.transpose() * vdot;
  const Vec Omegadot =
      -alg.bracket(Omega, omega_body) + Adlu.solve(omegadot) + spec_.iota_inv * mudot;

  Vec out(packed_dim());
  out.head(m) = v;
  out.segment(m, m) = vdot;
  pack_group(g * spec_.group.hat(Omega), out, 2 * m);
  out.tail(n) = Omegadot;
  return out;
}

double kk_hamiltonian(const KKMetricSpec& spec, const KKState& s) {
  return KKSystem(spec).hamiltonian(s);
}

Vec moment_map(const MatrixGroup& group, const KKState& s) {
  if (s.mu.size() != group.n()) throw DimensionMismatch("moment_map: state charge dimension");
  return s.mu;
}

WongState project_kk(const KKMetricSpec& spec, const KKState& s) {
  const Mat Ad = spec.group.Ad(s.g);
  WongState w;
  w.x = s.x;
  w.p = s.p;
  w.r = Ad.transpose().partialPivLu().solve(s.mu);
  return w;
}

KKTrajectory integrate_kk(const KKMetricSpec& spec, const KKState& s0, const IntegratorConfig& cfg,
                          int reproject_every, KKFormulation formulation) {
  const KKSystem sys(spec);
  if (s0.x.size() != spec.m || s0.p.size() != spec.m || s0.mu.size() != spec.n() ||
      s0.g.rows() != spec.group.matrix_dim || s0.g.cols() != spec.group.matrix_dim)
    throw DimensionMismatch("KK initial state has wrong shape");
  const int k = std::max(1, reproject_every);
  auto post = [&](long s, Vec& z) {
    if (s % k == 0) sys.reproject_packed(z);
  };
  std::vector<std::pair<double, Vec>> rec;
  if (formulation == KKFormulation::canonical) {
    VectorField f = [&](const Vec& z) { return sys.canonical_rhs(z); };
    rec = integrate_field(f, sys.pack(s0), cfg, post);
  } else {
    VectorField f = [&](const Vec& w) { return sys.geodesic_rhs(w); };
    rec = integrate_field(f, sys.to_geodesic(s0), cfg, post);
  }
  KKTrajectory tr;
  for (const auto& [t, z] : rec) {
    const KKState s = formulation == KKFormulation::canonical ? sys.unpack(z) : sys.from_geodesic(z);
    tr.times.push_back(t);
    tr.energy.push_back(sys.hamiltonian(s));
    tr.moments.push_back(moment_map(spec.group, s));
    tr.states.push_back(s);
  }
  return tr;
}

QuadraticGaugeFields kk_gauge_fields(const KKMetricSpec& spec) {
  QuadraticGaugeFields f;
  f.m = spec.m;
  f.n = spec.n();
  f.gamma_inv = spec.gamma_inv;
  f.A = spec.A;
  f.chi_inv = PolyMatrix::constant(spec.iota_inv, spec.m);
  return f;
}

Polynomial kk_pullback_polynomial(const KKMetricSpec& spec) {
  const int m = spec.m, n = spec.n(), d = 2 * m + n;
  std::vector<Polynomial> pi;
  for (int mu = 0; mu < m; ++mu) {
    Polynomial s = Polynomial::variable(d, m + mu);
    for (int a = 0; a < n; ++a)
      s += spec.A(mu, a).embed(d, 0) * Polynomial::variable(d, 2 * m + a);
    pi.push_back(s);
  }
  Polynomial K = quadratic_form(spec.gamma_inv.embed(d, 0), pi) * 0.5;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (spec.iota_inv(a, b) == 0.0) continue;
      K += Polynomial::variable(d, 2 * m + a) * Polynomial::variable(d, 2 * m + b) *
           (0.5 * spec.iota_inv(a, b));
    }
  return K;
}

double ad_invariance_residual(const LieAlgebra& g, const Mat& Q) {
  double worst = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const Mat ad = g.ad_basis(a);
    worst = std::max(worst, (ad * Q + Q * ad.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

KKSplit split_kk_hamiltonian(const KKMetricSpec& spec, const std::vector<KKState>& samples) {
  const KKSystem sys(spec);
  const int n = spec.n();
  KKSplit out;
  out.wong = wong_polynomial(kk_gauge_fields(spec));
  std::vector<Term> terms;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (spec.iota_inv(a, b) == 0.0) continue;
      std::vector<int> e(n, 0);
      e[a] += 1;
      e[b] += 1;
      terms.push_back({e, 0.5 * spec.iota_inv(a, b)});
    }
  out.vertical = Polynomial(n, terms);
  for (const KKState& s : samples) {
    const double K = sys.hamiltonian(s);
    const double H = out.wong(project_kk(spec, s).stacked());
    const double J = out.vertical(moment_map(spec.group, s));
    out.residual = std::max(out.residual, std::abs(K - H - J));
  }
  out.ad_invariance_residual = ad_invariance_residual(spec.group.algebra, spec.iota_inv);
  if (spec.iota_inv.cwiseAbs().maxCoeff() == 0.0)
    out.type = "invariant type";
  else if (out.ad_invariance_residual <= 1e-10)
    out.type = "ad-type";
  else
    out.type = "Sternberg-Weinstein type";
  return out;
}

std::vector<KKState> sample_kk_states(const KKMetricSpec& spec, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<KKState> out;
  for (int i = 0; i < count; ++i) {
    KKState s;
    s.x = rng.uniform_vec(spec.m, -1.0, 1.0);
    s.p = rng.uniform_vec(spec.m, -1.0, 1.0);
    s.mu = rng.uniform_vec(spec.n(), -1.0, 1.0);
    s.g = spec.group.exp(rng.uniform_vec(spec.n(), -2.0, 2.0));
    out.push_back(s);
  }
  return out;
}

}  // namespace swkit
