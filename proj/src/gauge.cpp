#include "swkit/gauge.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace swkit {

GaugePotentialField::GaugePotentialField(PolyMatrix A, LieAlgebra g)
    : m_(A.rows()), g_(std::move(g)), poly_(std::move(A)) {
  if (poly_->cols() != g_.dim())
    throw DimensionMismatch("gauge potential has " + std::to_string(poly_->cols()) +
                            " columns, algebra dimension is " + std::to_string(g_.dim()));
  if (poly_->num_vars() != m_)
    throw DimensionMismatch("gauge potential must depend on the m base coordinates");
  for (int rho = 0; rho < m_; ++rho) poly_jac_.push_back(poly_->derivative(rho));
}

GaugePotentialField::GaugePotentialField(int m, LieAlgebra g, ValueFn value, JacobianFn jacobian)
    : m_(m), g_(std::move(g)), value_(std::move(value)), jacobian_(std::move(jacobian)) {
  if (m <= 0 || !value_ || !jacobian_) throw InvalidParams("gauge potential needs m >= 1 and callables");
}

Mat GaugePotentialField::value(const Vec& x) const {
  if (x.size() != m_) throw DimensionMismatch("gauge potential evaluated at wrong dimension");
  return poly_ ? poly_->eval(x) : value_(x);
}

std::vector<Mat> GaugePotentialField::jacobian(const Vec& x) const {
  if (x.size() != m_) throw DimensionMismatch("gauge potential evaluated at wrong dimension");
  if (poly_) {
    std::vector<Mat> out;
    out.reserve(m_);
    for (const auto& d : poly_jac_) out.push_back(d.eval(x));
    return out;
  }
  return jacobian_(x);
}

CurvatureValue curvature_from(const LieAlgebra& g, const Mat& A, const std::vector<Mat>& dA) {
  const int m = static_cast<int>(A.rows());
  const int n = g.dim();
  CurvatureValue phi(n, Mat::Zero(m, m));
  for (int mu = 0; mu < m; ++mu)
    for (int nu = mu + 1; nu < m; ++nu) {
      const Vec br = g.bracket(A.row(mu).transpose(), A.row(nu).transpose());
      for (int a = 0; a < n; ++a) {
        const double v = dA[mu](nu, a) - dA[nu](mu, a) + br[a];
        phi[a](mu, nu) = v;
        phi[a](nu, mu) = -v;
      }
    }
  return phi;
}

CurvatureValue curvature_at(const GaugePotentialField& A, const Vec& x) {
  return curvature_from(A.algebra(), A.value(x), A.jacobian(x));
}

double automorphism_residual(const LieAlgebra& g, const Mat& R) {
  const int n = g.dim();
  if (R.rows() != n || R.cols() != n) throw DimensionMismatch("automorphism must be n x n");
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Vec ea = Vec::Zero(n), eb = Vec::Zero(n);
      ea[a] = 1.0;
      eb[b] = 1.0;
      const Vec lhs = R * g.bracket(ea, eb);
      const Vec rhs = g.bracket(R.col(a), R.col(b));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

GaugePotentialField gauge_transform(const GaugePotentialField& A, const GaugeTransition& t,
                                    const Mat& omega, double automorphism_tol) {
  const int m = A.m();
  const int n = A.n();
  if (t.P.rows() != m || t.P.cols() != m) throw DimensionMismatch("P must be m x m");
  if (omega.rows() != m || omega.cols() != m) throw DimensionMismatch("omega must be m x m");
  if (!t.R || !t.dR || !t.B || !t.dB) throw InvalidParams("gauge transition is incomplete");
  Eigen::FullPivLU<Mat> plu(t.P);
  if (!plu.isInvertible()) throw SingularBlock("P is not invertible");
  const Mat Pinv = plu.inverse();
  const Mat M = Pinv.transpose();
  const Mat PinvOmega = Pinv * omega;
  const LieAlgebra g = A.algebra();

  struct Pieces {
    Mat Rinv;
    Mat C;
    Vec y;
  };
  auto pieces = [=](const Vec& u) {
    Pieces p;
    p.y = M * u;
    const Mat R = t.R(p.y);
    if (R.rows() != n || R.cols() != n) throw DimensionMismatch("R must be n x n");
    Eigen::FullPivLU<Mat> rlu(R);
    if (!rlu.isInvertible()) throw SingularBlock("R is not invertible");
    const double res = automorphism_residual(g, R);
    if (res > automorphism_tol)
      throw NotAutomorphism("R is not a Lie algebra automorphism (residual " +
                            std::to_string(res) + ")");
    p.Rinv = rlu.inverse();
    const Mat B = t.B(p.y);
    if (B.rows() != m || B.cols() != n) throw DimensionMismatch("B must be m x n");
    p.C = A.value(p.y).transpose() - B.transpose() * PinvOmega;
    return p;
  };

  auto value = [=](const Vec& u) -> Mat {
    const Pieces p = pieces(u);
    return (p.Rinv * p.C * M).transpose();
  };
  auto jacobian = [=](const Vec& u) -> std::vector<Mat> {
    const Pieces p = pieces(u);
    const std::vector<Mat> dR = t.dR(p.y);
    const std::vector<Mat> dB = t.dB(p.y);
    const std::vector<Mat> dA = A.jacobian(p.y);
    std::vector<Mat> dy(m);
    for (int rho = 0; rho < m; ++rho) {
      const Mat dC = dA[rho].transpose() - dB[rho].transpose() * PinvOmega;
      dy[rho] = (-p.Rinv * dR[rho] * p.Rinv * p.C + p.Rinv * dC) * M;
    }
    std::vector<Mat> out(m, Mat::Zero(m, n));
    for (int j = 0; j < m; ++j) {
      Mat s = Mat::Zero(n, m);
      for (int rho = 0; rho < m; ++rho) s += M(rho, j) * dy[rho];
      out[j] = s.transpose();
    }
    return out;
  };
  return GaugePotentialField(m, g, value, jacobian);
}

StructureBianchiResidual structure_bianchi_residual(const GaugePotentialField& A, const Vec& x,
                                                    double fd_step) {
  const int m = A.m();
  const int n = A.n();
  const LieAlgebra& g = A.algebra();
  StructureBianchiResidual res;

  const CurvatureValue phi = curvature_at(A, x);
  std::vector<Mat> dA_fd(m);
  std::vector<CurvatureValue> dphi(m);
  Vec w = x;
  for (int rho = 0; rho < m; ++rho) {
    const double h = fd_step * std::max(1.0, std::abs(x[rho]));
    w[rho] = x[rho] + h;
    const Mat Ap = A.value(w);
    const CurvatureValue php = curvature_at(A, w);
    w[rho] = x[rho] - h;
    const Mat Am = A.value(w);
    const CurvatureValue phm = curvature_at(A, w);
    w[rho] = x[rho];
    dA_fd[rho] = (Ap - Am) / (2.0 * h);
    dphi[rho].resize(n);
    for (int a = 0; a < n; ++a) dphi[rho][a] = (php[a] - phm[a]) / (2.0 * h);
  }

  const CurvatureValue phi_fd = curvature_from(g, A.value(x), dA_fd);
  for (int a = 0; a < n; ++a)
    if (m > 0) res.structure = std::max(res.structure, (phi[a] - phi_fd[a]).cwiseAbs().maxCoeff());

  const Mat Ax = A.value(x);
  auto term = [&](int mu, int nu, int sigma) {
    Vec phins(n);
    for (int a = 0; a < n; ++a) phins[a] = phi[a](nu, sigma);
    Vec out = g.bracket(Ax.row(mu).transpose(), phins);
    for (int a = 0; a < n; ++a) out[a] += dphi[mu][a](nu, sigma);
    return out;
  };
  for (int mu = 0; mu < m; ++mu)
    for (int nu = mu + 1; nu < m; ++nu)
      for (int sigma = nu + 1; sigma < m; ++sigma) {
        const Vec s = term(mu, nu, sigma) + term(nu, sigma, mu) + term(sigma, mu, nu);
        res.bianchi = std::max(res.bianchi, s.cwiseAbs().maxCoeff());
      }
  return res;
}

}  // namespace swkit
