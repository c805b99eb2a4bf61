#include "swkit/poisson.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace swkit {

// ---------------------------------------------------------------------------
// ScalarField
// ---------------------------------------------------------------------------

Vec fd_gradient(const ScalarField::ValueFn& f, const Vec& z, double rel_step) {
  Vec g(z.size());
  Vec zp = z;
  for (int i = 0; i < z.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(z[i]));
    zp[i] = z[i] + h;
    const double fp = f(zp);
    zp[i] = z[i] - h;
    const double fm = f(zp);
    zp[i] = z[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Mat fd_hessian(const ScalarField::ValueFn& f, const Vec& z, double rel_step) {
  const int d = static_cast<int>(z.size());
  Mat H(d, d);
  Vec w = z;
  const double f0 = f(z);
  for (int i = 0; i < d; ++i) {
    const double hi = rel_step * std::max(1.0, std::abs(z[i]));
    w[i] = z[i] + hi;
    const double fp = f(w);
    w[i] = z[i] - hi;
    const double fm = f(w);
    w[i] = z[i];
    H(i, i) = (fp - 2.0 * f0 + fm) / (hi * hi);
    for (int j = i + 1; j < d; ++j) {
      const double hj = rel_step * std::max(1.0, std::abs(z[j]));
      double s = 0.0;
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          w[i] = z[i] + si * hi;
          w[j] = z[j] + sj * hj;
          s += si * sj * f(w);
        }
      w[i] = z[i];
      w[j] = z[j];
      H(i, j) = H(j, i) = s / (4.0 * hi * hj);
    }
  }
  return H;
}

ScalarField ScalarField::from_polynomial(Polynomial p) {
  ScalarField f;
  f.dim_ = p.num_vars();
  auto shared = std::make_shared<Polynomial>(p);
  f.value_ = [shared](const Vec& z) { return (*shared)(z); };
  f.grad_ = [shared](const Vec& z) { return shared->gradient(z); };
  f.hess_ = [shared](const Vec& z) { return shared->hessian(z); };
  f.poly_ = std::move(p);
  return f;
}

ScalarField ScalarField::from_function(int dim, ValueFn value, GradFn grad, HessFn hess,
                                       FdSteps steps) {
  if (!value) throw InvalidParams("scalar field needs a value function");
  ScalarField f;
  f.dim_ = dim;
  f.value_ = std::move(value);
  f.grad_ = std::move(grad);
  f.hess_ = std::move(hess);
  f.steps_ = steps;
  return f;
}

double ScalarField::value(const Vec& z) const {
  if (z.size() != dim_)
    throw DimensionMismatch("scalar field of dimension " + std::to_string(dim_) +
                            " evaluated at point of dimension " + std::to_string(z.size()));
  return value_(z);
}

Vec ScalarField::grad(const Vec& z) const {
  if (z.size() != dim_) throw DimensionMismatch("scalar field gradient: point dimension");
  if (grad_) return grad_(z);
  return fd_gradient(value_, z, steps_.gradient);
}

Mat ScalarField::hess(const Vec& z) const {
  if (z.size() != dim_) throw DimensionMismatch("scalar field Hessian: point dimension");
  if (hess_) return hess_(z);
  if (grad_) {
    // central differences of the exact gradient
    Mat H(dim_, dim_);
    Vec w = z;
    for (int i = 0; i < dim_; ++i) {
      const double h = steps_.gradient * std::max(1.0, std::abs(z[i]));
      w[i] = z[i] + h;
      const Vec gp = grad_(w);
      w[i] = z[i] - h;
      const Vec gm = grad_(w);
      w[i] = z[i];
      H.col(i) = (gp - gm) / (2.0 * h);
    }
    return 0.5 * (H + H.transpose());
  }
  return fd_hessian(value_, z, steps_.hessian);
}

ScalarField ScalarField::scaled(double s) const {
  if (poly_) return from_polynomial(*poly_ * s);
  ScalarField f = *this;
  auto v = value_;
  f.value_ = [v, s](const Vec& z) { return s * v(z); };
  if (grad_) {
    auto g = grad_;
    f.grad_ = [g, s](const Vec& z) { return Vec(s * g(z)); };
  }
  if (hess_) {
    auto h = hess_;
    f.hess_ = [h, s](const Vec& z) { return Mat(s * h(z)); };
  }
  return f;
}

// ---------------------------------------------------------------------------
// StructureFunctionField
// ---------------------------------------------------------------------------

StructureFunctionField::StructureFunctionField(PolyMatrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) throw DimensionMismatch("structure function field must be square");
  if (w_.num_vars() != w_.rows())
    throw DimensionMismatch("structure function field must depend on n transverse coordinates");
  for (int a = 0; a < w_.rows(); ++a)
    for (int b = a; b < w_.cols(); ++b) {
      const Polynomial s = w_(a, b) + w_(b, a);
      if (!s.is_zero())
        throw AntisymmetryViolation("structure function w_" + std::to_string(a) + std::to_string(b) +
                                    " is not antisymmetric");
    }
}

StructureFunctionField StructureFunctionField::linear(const LieAlgebra& g) {
  const int n = g.dim();
  PolyMatrix w(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<Term> terms;
      for (int k = 0; k < n; ++k) {
        if (g.c(a, b, k) == 0.0) continue;
        std::vector<int> e(n, 0);
        e[k] = 1;
        terms.push_back({e, g.c(a, b, k)});
      }
      w(a, b) = Polynomial(n, terms);
    }
  return StructureFunctionField(w);
}

double StructureFunctionField::value_at_origin() const {
  const Mat w0 = w_.eval(Vec::Zero(n()));
  return w0.size() ? w0.cwiseAbs().maxCoeff() : 0.0;
}

// ---------------------------------------------------------------------------
// PoissonStructure
// ---------------------------------------------------------------------------

std::string kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::canonical: return "canonical";
    case StructureKind::lie_poisson: return "lie_poisson";
    case StructureKind::darboux_product: return "darboux_product";
    case StructureKind::custom: return "custom";
  }
  return "custom";
}

namespace {

std::vector<std::string> canonical_names(int m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("x" + std::to_string(i));
  for (int i = 1; i <= m; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

void put_canonical(Mat& W, int m) {
  for (int i = 0; i < m; ++i) {
    W(i, m + i) = 1.0;
    W(m + i, i) = -1.0;
  }
}

Mat lie_poisson_matrix(const LieAlgebra& g, const Vec& r) {
  const int n = g.dim();
  Mat w(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g.c(a, b, k) * r[k];
      w(a, b) = s;
    }
  return w;
}

}  // namespace

PoissonStructure PoissonStructure::canonical(int m) {
  if (m <= 0) throw InvalidParams("canonical structure needs m >= 1");
  PoissonStructure P;
  P.kind_ = StructureKind::canonical;
  P.m_ = m;
  P.d_ = 2 * m;
  P.coordinate_names = canonical_names(m);
  return P;
}

PoissonStructure PoissonStructure::lie_poisson(const LieAlgebra& g) {
  if (g.dim() <= 0) throw InvalidParams("lie_poisson structure needs a valid algebra");
  PoissonStructure P;
  P.kind_ = StructureKind::lie_poisson;
  P.n_ = g.dim();
  P.d_ = g.dim();
  P.algebra_ = g;
  for (int i = 1; i <= P.n_; ++i) P.coordinate_names.push_back("r" + std::to_string(i));
  return P;
}

PoissonStructure PoissonStructure::darboux_product(int m, const LieAlgebra& g) {
  if (m < 0) throw InvalidParams("darboux_product needs m >= 0");
  PoissonStructure P;
  P.kind_ = StructureKind::darboux_product;
  P.m_ = m;
  P.n_ = g.dim();
  P.d_ = 2 * m + g.dim();
  P.algebra_ = g;
  P.coordinate_names = canonical_names(m);
  for (int i = 1; i <= P.n_; ++i) P.coordinate_names.push_back("r" + std::to_string(i));
  return P;
}

PoissonStructure PoissonStructure::darboux_product(int m, const StructureFunctionField& field) {
  if (m < 0) throw InvalidParams("darboux_product needs m >= 0");
  PoissonStructure P;
  P.kind_ = StructureKind::darboux_product;
  P.m_ = m;
  P.n_ = field.n();
  P.d_ = 2 * m + field.n();
  P.field_ = field;
  P.coordinate_names = canonical_names(m);
  for (int i = 1; i <= P.n_; ++i) P.coordinate_names.push_back("r" + std::to_string(i));
  return P;
}

PoissonStructure PoissonStructure::custom(const PolyMatrix& w) {
  if (w.rows() != w.cols() || w.num_vars() != w.rows())
    throw InvalidParams("custom bivector must be d x d in d variables");
  for (int a = 0; a < w.rows(); ++a)
    for (int b = a; b < w.cols(); ++b)
      if (!(w(a, b) + w(b, a)).is_zero())
        throw AntisymmetryViolation("custom bivector is not antisymmetric");
  PoissonStructure P;
  P.kind_ = StructureKind::custom;
  P.d_ = w.rows();
  P.custom_poly_ = w;
  for (int i = 1; i <= P.d_; ++i) P.coordinate_names.push_back("z" + std::to_string(i));
  return P;
}

PoissonStructure PoissonStructure::custom(int d, BivectorFn w) {
  if (d <= 0 || !w) throw InvalidParams("custom bivector needs d >= 1 and a function");
  PoissonStructure P;
  P.kind_ = StructureKind::custom;
  P.d_ = d;
  P.custom_fn_ = std::move(w);
  for (int i = 1; i <= P.d_; ++i) P.coordinate_names.push_back("z" + std::to_string(i));
  return P;
}

void PoissonStructure::check_point(const Vec& z) const {
  if (z.size() != d_)
    throw DimensionMismatch("point of dimension " + std::to_string(z.size()) +
                            " for structure of dimension " + std::to_string(d_));
}

Mat PoissonStructure::bivector_at(const Vec& z) const {
  check_point(z);
  switch (kind_) {
    case StructureKind::canonical: {
      Mat W = Mat::Zero(d_, d_);
      put_canonical(W, m_);
      return W;
    }
    case StructureKind::lie_poisson: return lie_poisson_matrix(*algebra_, z);
    case StructureKind::darboux_product: {
      Mat W = Mat::Zero(d_, d_);
      put_canonical(W, m_);
      const Vec r = z.tail(n_);
      W.bottomRightCorner(n_, n_) =
          algebra_ ? lie_poisson_matrix(*algebra_, r) : field_->eval(r);
      return W;
    }
    case StructureKind::custom: {
      if (custom_poly_) return custom_poly_->eval(z);
      Mat W = custom_fn_(z);
      if (W.rows() != d_ || W.cols() != d_)
        throw DimensionMismatch("custom bivector returned wrong shape");
      return W;
    }
  }
  return Mat();
}

std::vector<Mat> PoissonStructure::bivector_derivatives(const Vec& z) const {
  check_point(z);
  std::vector<Mat> out(d_, Mat::Zero(d_, d_));
  switch (kind_) {
    case StructureKind::canonical: break;
    case StructureKind::lie_poisson:
    case StructureKind::darboux_product: {
      const int off = 2 * m_;
      if (algebra_) {
        for (int l = 0; l < n_; ++l)
          for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) out[off + l](off + a, off + b) = algebra_->c(a, b, l);
      } else {
        const Vec r = z.tail(n_);
        for (int l = 0; l < n_; ++l)
          out[off + l].bottomRightCorner(n_, n_) = field_->w().derivative(l).eval(r);
      }
      break;
    }
    case StructureKind::custom:
      if (custom_poly_) {
        for (int l = 0; l < d_; ++l) out[l] = custom_poly_->derivative(l).eval(z);
      } else {
        const double step = FdSteps{}.gradient;
        Vec w = z;
        for (int l = 0; l < d_; ++l) {
          const double h = step * std::max(1.0, std::abs(z[l]));
          w[l] = z[l] + h;
          const Mat wp = custom_fn_(w);
          w[l] = z[l] - h;
          const Mat wm = custom_fn_(w);
          w[l] = z[l];
          out[l] = (wp - wm) / (2.0 * h);
        }
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Mat bivector_at(const PoissonStructure& P, const Vec& z) { return P.bivector_at(z); }

double poisson_bracket(const PoissonStructure& P, const ScalarField& f, const ScalarField& g,
                       const Vec& z) {
  if (f.dim() != P.dim() || g.dim() != P.dim())
    throw DimensionMismatch("bracket of fields with mismatched dimension");
  return f.grad(z).dot(P.bivector_at(z) * g.grad(z));
}

Vec hamiltonian_vector(const PoissonStructure& P, const ScalarField& H, const Vec& z) {
  if (H.dim() != P.dim())
    throw DimensionMismatch("Hamiltonian of dimension " + std::to_string(H.dim()) +
                            " on structure of dimension " + std::to_string(P.dim()));
  return P.bivector_at(z) * H.grad(z);
}

JacobiPointReport jacobi_report_at(const PoissonStructure& P, const Vec& z) {
  const int d = P.dim();
  const Mat W = P.bivector_at(z);
  const std::vector<Mat> dW = P.bivector_derivatives(z);
  // T[i](j,k) = sum_l w^{il} d_l w^{jk}
  std::vector<Mat> T(d, Mat::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < d; ++l)
      if (W(i, l) != 0.0) T[i] += W(i, l) * dW[l];
  JacobiPointReport rep;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const double s = std::abs(T[i](j, k) + T[j](k, i) + T[k](i, j));
        if (s > rep.residual) rep = JacobiPointReport{s, i, j, k};
      }
  return rep;
}

double jacobi_residual_at(const PoissonStructure& P, const Vec& z) {
  return jacobi_report_at(P, z).residual;
}

double casimir_residual(const PoissonStructure& P, const ScalarField& f,
                        const std::vector<Vec>& samples) {
  if (f.dim() != P.dim()) throw DimensionMismatch("Casimir candidate dimension");
  double worst = 0.0;
  for (const Vec& z : samples) worst = std::max(worst, (P.bivector_at(z) * f.grad(z)).norm());
  return worst;
}

LieAlgebra linearize_transverse(const PoissonStructure& P, double jacobi_tol) {
  if (P.kind() == StructureKind::lie_poisson) return *P.algebra();
  if (P.kind() != StructureKind::darboux_product)
    throw InvalidParams("linearize_transverse needs a darboux_product structure");
  if (P.algebra()) return *P.algebra();
  const StructureFunctionField& f = *P.transverse_field();
  const double w0 = f.value_at_origin();
  if (w0 > 0.0)
    throw NotRankZero("transverse structure does not vanish at the origin: max |w_ab(0)| = " +
                      std::to_string(w0));
  const int n = f.n();
  std::vector<double> c(static_cast<size_t>(n) * n * n);
  const Vec zero = Vec::Zero(n);
  for (int k = 0; k < n; ++k) {
    const Mat dk = f.w().derivative(k).eval(zero);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) c[(a * n + b) * n + k] = dk(a, b);
  }
  return LieAlgebra(n, std::move(c), jacobi_tol);
}

std::vector<ScalarField> default_casimirs(const PoissonStructure& P,
                                          std::vector<std::string>* names) {
  std::vector<ScalarField> out;
  if (names) names->clear();
  if (P.kind() != StructureKind::lie_poisson && P.kind() != StructureKind::darboux_product)
    return out;
  const std::optional<LieAlgebra>& g = P.algebra();
  if (!g) return out;
  const int d = P.dim();
  const int off = d - g->dim();
  if (!g->is_abelian() && g->euclidean_invariant()) {
    std::vector<Term> terms;
    for (int a = 0; a < g->dim(); ++a) {
      std::vector<int> e(d, 0);
      e[off + a] = 2;
      terms.push_back({e, 1.0});
    }
    out.push_back(ScalarField::from_polynomial(Polynomial(d, terms)));
    if (names) names->push_back("r_sq");
  }
  for (int a : g->central_basis_indices()) {
    out.push_back(ScalarField::from_polynomial(Polynomial::variable(d, off + a)));
    if (names) names->push_back("r" + std::to_string(a + 1));
  }
  return out;
}

}  // namespace swkit
