#include "swkit/sw_extract.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace swkit {

Mat VerticalJet::block() const {
  Mat J(m + n, m + n);
  J.topLeftCorner(m, m) = Hpp;
  J.topRightCorner(m, n) = Hpr;
  J.bottomLeftCorner(n, m) = Hpr.transpose();
  J.bottomRightCorner(n, n) = Hrr;
  return J;
}

Mat SWFields::rebuild() const {
  const int m = static_cast<int>(gamma_inv.rows());
  const int n = static_cast<int>(chi_inv.rows());
  Mat J(m + n, m + n);
  J.topLeftCorner(m, m) = gamma_inv;
  J.topRightCorner(m, n) = gamma_inv * A;
  J.bottomLeftCorner(n, m) = A.transpose() * gamma_inv;
  J.bottomRightCorner(n, n) = chi_inv + A.transpose() * gamma_inv * A;
  return J;
}

VerticalJet vertical_jet(const ScalarField& H, const Vec& x, int m, int n, double tol) {
  if (m <= 0 || n < 0) throw InvalidParams("vertical_jet needs m >= 1 and n >= 0");
  if (x.size() != m) throw DimensionMismatch("base point must have length m");
  if (H.dim() != 2 * m + n)
    throw DimensionMismatch("Hamiltonian dimension " + std::to_string(H.dim()) +
                            " differs from 2m+n = " + std::to_string(2 * m + n));
  Vec z = Vec::Zero(2 * m + n);
  z.head(m) = x;
  VerticalJet jet;
  jet.x = x;
  jet.m = m;
  jet.n = n;
  jet.grad_norm = H.grad(z).norm();
  if (jet.grad_norm > tol) throw DifferentialNotVanishing(jet.grad_norm);
  Mat full = H.hess(z);
  full = 0.5 * (full + full.transpose());
  jet.Hpp = full.block(m, m, m, m);
  jet.Hpr = full.block(m, 2 * m, m, n);
  jet.Hrr = full.block(2 * m, 2 * m, n, n);
  return jet;
}

SWFields extract_fields(const VerticalJet& jet, double max_condition) {
  const int m = jet.m, n = jet.n;
  if (jet.Hpp.rows() != m || jet.Hpp.cols() != m || jet.Hpr.rows() != m ||
      jet.Hpr.cols() != n || jet.Hrr.rows() != n || jet.Hrr.cols() != n)
    throw DimensionMismatch("jet blocks have inconsistent shapes");
  Eigen::JacobiSVD<Mat> svd(jet.Hpp);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smin = sv.minCoeff(), smax = sv.maxCoeff();
  if (!(smin > 0.0) || smax / smin > max_condition)
    throw BaseBlockSingular("Hpp is singular or ill-conditioned (sigma_min = " +
                            std::to_string(smin) + ")");
  SWFields f;
  f.gamma_inv = jet.Hpp;
  f.gamma_condition = smax / smin;
  f.A = jet.Hpp.fullPivLu().solve(jet.Hpr);
  Mat chi = jet.Hrr - jet.Hpr.transpose() * f.A;
  f.chi_inv = 0.5 * (chi + chi.transpose());
  if (n > 0) {
    Eigen::JacobiSVD<Mat> csvd(f.chi_inv);
    const double scale = std::max(1.0, jet.block().cwiseAbs().maxCoeff());
    f.chi_degenerate = csvd.singularValues().minCoeff() <= 1e-12 * scale;
  }
  return f;
}

double reconstruction_residual(const VerticalJet& jet, const SWFields& f) {
  const Mat J = jet.block();
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  if (J.size() == 0) return 0.0;
  return (f.rebuild() - J).cwiseAbs().maxCoeff() / scale;
}

VerticalJet reduce_jet(const VerticalJet& jet, const std::vector<int>& constrained) {
  std::set<int> drop;
  for (int a : constrained) {
    if (a < 0 || a >= jet.n)
      throw IndexOutOfRange("constrained index " + std::to_string(a) + " outside 0.." +
                            std::to_string(jet.n - 1));
    drop.insert(a);
  }
  std::vector<int> keep;
  for (int a = 0; a < jet.n; ++a)
    if (!drop.count(a)) keep.push_back(a);
  VerticalJet out = jet;
  const int k = static_cast<int>(keep.size());
  out.n = k;
  out.Hpr.resize(jet.m, k);
  out.Hrr.resize(k, k);
  for (int j = 0; j < k; ++j) {
    out.Hpr.col(j) = jet.Hpr.col(keep[j]);
    for (int i = 0; i < k; ++i) out.Hrr(i, j) = jet.Hrr(keep[i], keep[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial field families
// ---------------------------------------------------------------------------

SWFields QuadraticGaugeFields::at(const Vec& x) const {
  SWFields f;
  f.gamma_inv = gamma_inv.eval(x);
  f.A = A.eval(x);
  f.chi_inv = chi_inv.eval(x);
  return f;
}

void QuadraticGaugeFields::validate() const {
  if (m <= 0 || n < 0) throw InvalidParams("quadratic gauge fields need m >= 1, n >= 0");
  auto check = [&](const PolyMatrix& M, int r, int c, const char* name) {
    if (M.rows() != r || M.cols() != c || M.num_vars() != m)
      throw DimensionMismatch(std::string(name) + " has wrong shape or variable count");
  };
  check(gamma_inv, m, m, "gamma_inv");
  check(A, m, n, "A");
  check(chi_inv, n, n, "chi_inv");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!(gamma_inv(i, j) - gamma_inv(j, i)).is_zero())
        throw InvalidParams("gamma_inv must be symmetric");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(chi_inv(i, j) - chi_inv(j, i)).is_zero())
        throw InvalidParams("chi_inv must be symmetric");
}

namespace {

std::vector<Polynomial> kinetic_momenta(const QuadraticGaugeFields& f) {
  const int d = 2 * f.m + f.n;
  std::vector<Polynomial> pi;
  for (int mu = 0; mu < f.m; ++mu) {
    Polynomial s = Polynomial::variable(d, f.m + mu);
    for (int a = 0; a < f.n; ++a) {
      if (f.A(mu, a).is_zero()) continue;
      s += f.A(mu, a).embed(d, 0) * Polynomial::variable(d, 2 * f.m + a);
    }
    pi.push_back(std::move(s));
  }
  return pi;
}

void check_positive_at_origin(const QuadraticGaugeFields& f) {
  const Mat G = f.gamma_inv.eval(Vec::Zero(f.m));
  Eigen::JacobiSVD<Mat> svd(G);
  if (!(svd.singularValues().minCoeff() > 0.0))
    throw BaseBlockSingular("gamma_inv is singular at x = 0");
}

}  // namespace

Polynomial wong_polynomial(const QuadraticGaugeFields& f) {
  f.validate();
  const int d = 2 * f.m + f.n;
  return quadratic_form(f.gamma_inv.embed(d, 0), kinetic_momenta(f)) * 0.5;
}

Polynomial einstein_mayer_polynomial(const QuadraticGaugeFields& f) {
  const int d = 2 * f.m + f.n;
  std::vector<Polynomial> r;
  for (int a = 0; a < f.n; ++a) r.push_back(Polynomial::variable(d, 2 * f.m + a));
  return wong_polynomial(f) + quadratic_form(f.chi_inv.embed(d, 0), r) * 0.5;
}

Polynomial vertical_quadratic_part(const Polynomial& H, int m, int n) {
  if (H.num_vars() != 2 * m + n) throw DimensionMismatch("vertical_quadratic_part: dimension");
  return H.select_partial_degree(m, m + n, 2);
}

ScalarField wong_hamiltonian(const QuadraticGaugeFields& f, const LieAlgebra& g) {
  if (g.dim() != f.n) throw DimensionMismatch("gauge fields and algebra disagree on n");
  check_positive_at_origin(f);
  return ScalarField::from_polynomial(wong_polynomial(f));
}

ScalarField einstein_mayer_hamiltonian(const QuadraticGaugeFields& f, const LieAlgebra& g) {
  if (g.dim() != f.n) throw DimensionMismatch("gauge fields and algebra disagree on n");
  check_positive_at_origin(f);
  return ScalarField::from_polynomial(einstein_mayer_polynomial(f));
}

ScalarField wong_hamiltonian(const SWFieldFn& fields, int m, int n) {
  auto value = [fields, m, n](const Vec& z) {
    const SWFields f = fields(z.head(m));
    if (f.gamma_inv.rows() != m || f.A.rows() != m || f.A.cols() != n)
      throw DimensionMismatch("field provider returned wrong shapes");
    const Vec pi = z.segment(m, m) + f.A * z.tail(n);
    return 0.5 * pi.dot(f.gamma_inv * pi);
  };
  return ScalarField::from_function(2 * m + n, value);
}

ScalarField einstein_mayer_hamiltonian(const JetFieldFn& jets, int m, int n) {
  auto value = [jets, m, n](const Vec& z) {
    const VerticalJet j = jets(z.head(m));
    if (j.m != m || j.n != n) throw DimensionMismatch("jet provider returned wrong shapes");
    extract_fields(j);
    const Vec v = z.tail(m + n);
    return 0.5 * v.dot(j.block() * v);
  };
  return ScalarField::from_function(2 * m + n, value);
}

ScalarField einstein_mayer_hamiltonian(const Polynomial& H, int m, int n, double max_condition) {
  if (H.num_vars() != 2 * m + n) throw DimensionMismatch("einstein_mayer_hamiltonian: dimension");
  const int k = m + n;
  // Vertical Hessian entries as polynomials in x (fiber variables set to 0).
  std::vector<Polynomial> D(static_cast<size_t>(k * k));
  std::vector<std::vector<Polynomial>> dD(static_cast<size_t>(m));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Polynomial e = H.derivative(m + i).derivative(m + j).select_partial_degree(m, k, 0);
      D[static_cast<size_t>(i * k + j)] = e;
    }
  for (int rho = 0; rho < m; ++rho)
    for (const Polynomial& e : D) dD[static_cast<size_t>(rho)].push_back(e.derivative(rho));
  auto eval = [k](const std::vector<Polynomial>& entries, const Vec& z) {
    Mat out(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out(i, j) = entries[static_cast<size_t>(i * k + j)](z);
    return out;
  };
  struct Eval {
    Mat B;
    std::vector<Mat> dB;
  };
  auto blocks = [=](const Vec& z) {
    const Mat J = eval(D, z);
    VerticalJet jet;
    jet.x = z.head(m);
    jet.m = m;
    jet.n = n;
    jet.Hpp = J.topLeftCorner(m, m);
    jet.Hpr = J.topRightCorner(m, n);
    jet.Hrr = J.bottomRightCorner(n, n);
    const SWFields f = extract_fields(jet, max_condition);
    const Mat& G = f.gamma_inv;
    const Mat& A = f.A;
    Eval out;
    out.B = f.rebuild();
    const Eigen::PartialPivLU<Mat> lu(G);
    for (int rho = 0; rho < m; ++rho) {
      const Mat dJ = eval(dD[static_cast<size_t>(rho)], z);
      const Mat dG = dJ.topLeftCorner(m, m);
      const Mat dHpr = dJ.topRightCorner(m, n);
      const Mat dHrr = dJ.bottomRightCorner(n, n);
      const Mat dA = lu.solve(dHpr - dG * A);
      const Mat dchi = dHrr - dHpr.transpose() * A - A.transpose() * dHpr + A.transpose() * dG * A;
      Mat dB(k, k);
      dB.topLeftCorner(m, m) = dG;
      dB.topRightCorner(m, n) = dG * A + G * dA;
      dB.bottomLeftCorner(n, m) = dB.topRightCorner(m, n).transpose();
      const Mat t = dA.transpose() * G * A;
      dB.bottomRightCorner(n, n) = dchi + t + t.transpose() + A.transpose() * dG * A;
      out.dB.push_back(dB);
    }
    return out;
  };
  auto value = [=](const Vec& z) {
    const Vec v = z.tail(k);
    return 0.5 * v.dot(blocks(z).B * v);
  };
  auto grad = [=](const Vec& z) {
    const Vec v = z.tail(k);
    const Eval e = blocks(z);
    Vec g(m + k);
    for (int rho = 0; rho < m; ++rho) g[rho] = 0.5 * v.dot(e.dB[static_cast<size_t>(rho)] * v);
    g.tail(k) = e.B * v;
    return g;
  };
  return ScalarField::from_function(m + k, value, grad);
}

double schur_split_residual(const JetFieldFn& jets, int m, int n, const std::vector<Vec>& samples) {
  double worst = 0.0;
  for (const Vec& z : samples) {
    const VerticalJet j = jets(z.head(m));
    const SWFields f = extract_fields(j);
    const Vec v = z.tail(m + n);
    const Vec p = z.segment(m, m);
    const Vec r = z.tail(n);
    const double h2 = 0.5 * v.dot(j.block() * v);
    const Vec pi = p + f.A * r;
    const double h1 = 0.5 * pi.dot(f.gamma_inv * pi);
    const double chi = 0.5 * r.dot(f.chi_inv * r);
    worst = std::max(worst, std::abs(h2 - h1 - chi) / std::max(1.0, std::abs(h2)));
  }
  return worst;
}

double fd_vertical_quadratic(const ScalarField& H, const Vec& x, const Vec& v, double eps) {
  const int m = static_cast<int>(x.size());
  const int k = static_cast<int>(v.size());
  if (H.dim() != m + k) throw DimensionMismatch("fd_vertical_quadratic: dimension");
  Vec z0(m + k);
  z0.head(m) = x;
  z0.tail(k).setZero();
  const double h0 = H(z0);
  auto D = [&](double e) {
    Vec zp = z0, zm = z0;
    zp.tail(k) = e * v;
    zm.tail(k) = -e * v;
    return 0.5 * (H(zp) - 2.0 * h0 + H(zm)) / (e * e);
  };
  const double d1 = D(eps), d2 = D(eps / 2), d3 = D(eps / 4);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace swkit
