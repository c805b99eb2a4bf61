#pragma once

#include "swkit/gauge.hpp"
#include "swkit/kk_bundle.hpp"
#include "swkit/linalg.hpp"
#include "swkit/sw_extract.hpp"

#include <complex>
#include <vector>

namespace swkit::testing {

inline Mat real_expm(const Mat& X) { return expm(X.cast<std::complex<double>>()).real(); }

/// Random polynomial in `vars` variables with every total degree up to max_deg.
inline Polynomial random_poly(int vars, int max_deg, Rng& rng, double scale = 0.5) {
  std::vector<Term> terms;
  for (int a = 0; a <= max_deg; ++a)
    for (int b = 0; a + b <= max_deg; ++b) {
      std::vector<int> e(vars, 0);
      e[0] = a;
      e[1 % vars] += b;
      terms.push_back({e, rng.uniform(-scale, scale)});
    }
  if (vars > 2 && max_deg >= 3) {
    std::vector<int> e(vars, 0);
    e[0] = e[1] = e[2] = 1;
    terms.push_back({e, rng.uniform(-scale, scale)});
    e = std::vector<int>(vars, 0);
    e[2] = 3;
    terms.push_back({e, rng.uniform(-scale, scale)});
  }
  return Polynomial(vars, terms);
}

inline PolyMatrix random_potential(int m, int n, int max_deg, Rng& rng) {
  PolyMatrix A(m, n, m);
  for (int mu = 0; mu < m; ++mu)
    for (int a = 0; a < n; ++a) A(mu, a) = random_poly(m, max_deg, rng);
  return A;
}

/// Symmetric polynomial matrix: constant SPD part plus small terms up to degree 2.
inline PolyMatrix random_metric(int size, int vars, Rng& rng, double min_eig) {
  const Mat c = rng.random_spd(size, min_eig);
  PolyMatrix M = PolyMatrix::constant(c, vars);
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) {
      M(i, j) += random_poly(vars, 2, rng, 0.1);
      if (i != j) M(j, i) = M(i, j);
    }
  return M;
}

inline QuadraticGaugeFields random_gauge_fields(int m, int n, Rng& rng) {
  QuadraticGaugeFields f;
  f.m = m;
  f.n = n;
  f.gamma_inv = random_metric(m, m, rng, 1.0);
  f.A = random_potential(m, n, 2, rng);
  f.chi_inv = random_metric(n, m, rng, 0.5);
  return f;
}

/// Random terms of fiber degree 3 and 4 on (x, p, r).
inline Polynomial fiber_corrections(int m, int n, Rng& rng) {
  const int d = 2 * m + n;
  std::vector<Term> terms;
  for (int t = 0; t < 6; ++t) {
    std::vector<int> e(d, 0);
    const int deg = 3 + t % 2;
    for (int k = 0; k < deg; ++k) ++e[m + static_cast<int>(rng.next() % static_cast<std::uint64_t>(m + n))];
    e[static_cast<int>(rng.next() % static_cast<std::uint64_t>(m))] += static_cast<int>(t % 3 == 0);
    terms.push_back({e, rng.uniform(-1.0, 1.0)});
  }
  return Polynomial(d, terms);
}

inline Mat omega(int m) {
  Mat w = Mat::Zero(m, m);
  for (int i = 0; i + 1 < m; i += 2) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = -1.0;
  }
  return w;
}

/// R(y) = exp(ad xi0) exp(theta(y) ad e) with theta = a.y + y^T S y / 2,
/// and B chosen so that A~^T = (R^{-1} A^T + e grad(theta)^T) M.
inline GaugeTransition random_transition(const LieAlgebra& g, int m, Rng& rng, Mat P) {
  const int n = g.dim();
  const Mat R0 = real_expm(g.ad(rng.uniform_vec(n, -1, 1)));
  const Vec e = rng.uniform_vec(n, -1, 1);
  const Mat ade = g.ad(e);
  const Vec a = rng.uniform_vec(m, -1, 1);
  Mat S = rng.uniform_mat(m, m, -0.5, 0.5);
  S = (S + S.transpose()).eval();
  const Mat Winv = omega(m).inverse();

  auto theta = [=](const Vec& y) { return a.dot(y) + 0.5 * y.dot(S * y); };
  auto R = [=](const Vec& y) -> Mat { return R0 * real_expm(theta(y) * ade); };
  auto dR = [=](const Vec& y) {
    const Vec gth = a + S * y;
    const Mat r = R(y);
    std::vector<Mat> out;
    for (int rho = 0; rho < m; ++rho) out.push_back(gth[rho] * r * ade);
    return out;
  };
  auto B = [=](const Vec& y) -> Mat {
    const Mat Z = e * (a + S * y).transpose();
    return (-R(y) * Z * Winv * P).transpose();
  };
  auto dB = [=](const Vec& y) {
    const Vec gth = a + S * y;
    const Mat r = R(y);
    const Mat Z = e * gth.transpose();
    std::vector<Mat> out;
    for (int rho = 0; rho < m; ++rho) {
      const Mat dr = gth[rho] * r * ade;
      const Mat dZ = e * S.row(rho);
      out.push_back((-(dr * Z + r * dZ) * Winv * P).transpose());
    }
    return out;
  };
  return GaugeTransition{R, dR, B, dB, std::move(P)};
}

/// Relative mismatch of curvature after a transition against
/// (R^{-1})_ab M^T Phi^b(y) M, y = M u.
inline double covariance_defect(const GaugePotentialField& A, const GaugeTransition& tr, const Vec& u) {
  const int m = A.m(), n = A.n();
  const Mat M = tr.P.inverse().transpose();
  const GaugePotentialField At = gauge_transform(A, tr, omega(m));
  const Vec y = M * u;
  const CurvatureValue F = curvature_at(A, y);
  const CurvatureValue Ft = curvature_at(At, u);
  const Mat Rinv = tr.R(y).inverse();
  double worst = 0.0, scale = 1.0;
  for (int a = 0; a < n; ++a) {
    Mat expect = Mat::Zero(m, m);
    for (int b = 0; b < n; ++b) expect += Rinv(a, b) * M.transpose() * F[b] * M;
    worst = std::max(worst, (Ft[a] - expect).cwiseAbs().maxCoeff());
    scale = std::max(scale, expect.cwiseAbs().maxCoeff());
  }
  return worst / scale;
}

}  // namespace swkit::testing
