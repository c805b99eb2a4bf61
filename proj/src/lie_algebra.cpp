#include "swkit/lie_algebra.hpp"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace swkit {

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace::Subspace(int ambient_dim, Mat basis, double rank_tol)
    : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.cols() == 0) basis_.resize(ambient_dim_, 0);
  if (basis_.rows() != ambient_dim_)
    throw DimensionMismatch("subspace basis has " + std::to_string(basis_.rows()) +
                            " rows, ambient dimension is " + std::to_string(ambient_dim_));
  if (basis_.cols() > 0 && numerical_rank(basis_, rank_tol) != basis_.cols())
    throw InvalidParams("subspace basis vectors are linearly dependent");
}

Mat Subspace::orthonormal() const {
  if (dim() == 0) return Mat(ambient_dim_, 0);
  Eigen::HouseholderQR<Mat> qr(basis_);
  return qr.householderQ() * Mat::Identity(ambient_dim_, dim());
}

Mat Subspace::projector() const {
  const Mat q = orthonormal();
  return q * q.transpose();
}

double Subspace::containment_residual(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionMismatch("subspace ambient dims differ");
  if (other.dim() == 0) return 0.0;
  const Mat q = orthonormal();
  double worst = 0.0;
  for (int j = 0; j < other.dim(); ++j) {
    const Vec v = other.basis_.col(j);
    const double nv = v.norm();
    const Vec r = v - q * (q.transpose() * v);
    worst = std::max(worst, r.norm() / std::max(nv, 1e-300));
  }
  return worst;
}

bool Subspace::contains(const Subspace& other, double tol) const {
  return containment_residual(other) <= tol;
}

Subspace Subspace::whole(int n) { return Subspace(n, Mat::Identity(n, n)); }
Subspace Subspace::zero(int n) { return Subspace(n, Mat(n, 0)); }
Subspace Subspace::span(const Vec& v) {
  return Subspace(static_cast<int>(v.size()), Mat(v));
}

// ---------------------------------------------------------------------------
// LieAlgebra
// ---------------------------------------------------------------------------

namespace {

void check_antisymmetry(int n, const std::vector<double>& c) {
  if (n <= 0) throw InvalidParams("Lie algebra dimension must be positive");
  if (static_cast<long>(c.size()) != static_cast<long>(n) * n * n)
    throw DimensionMismatch("structure constants must have n^3 entries");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (c[(a * n + b) * n + k] != -c[(b * n + a) * n + k])
          throw AntisymmetryViolation("c[" + std::to_string(a) + "][" + std::to_string(b) +
                                      "][" + std::to_string(k) + "] is not antisymmetric");
}

std::vector<double> flatten(const StructureTensor& t) {
  const int n = static_cast<int>(t.size());
  std::vector<double> c(static_cast<size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(t[a].size()) != n)
      throw DimensionMismatch("structure tensor must have shape n x n x n");
    for (int b = 0; b < n; ++b) {
      if (static_cast<int>(t[a][b].size()) != n)
        throw DimensionMismatch("structure tensor must have shape n x n x n");
      for (int k = 0; k < n; ++k) c[(a * n + b) * n + k] = t[a][b][k];
    }
  }
  return c;
}

std::vector<std::string> default_labels(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(int n, std::vector<double> c, double tol,
                       std::vector<std::string> labels)
    : LieAlgebra(unchecked(n, std::move(c), tol, std::move(labels))) {
  const JacobiReport rep = jacobi_report(n_, c_);
  if (rep.residual > tol_) throw JacobiViolation(rep.residual, rep.a, rep.b, rep.c);
}

LieAlgebra LieAlgebra::unchecked(int n, std::vector<double> c, double tol,
                                 std::vector<std::string> labels) {
  check_antisymmetry(n, c);
  if (tol < 0) throw InvalidParams("tolerance must be nonnegative");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw DimensionMismatch("label count differs from dimension");
  LieAlgebra g;
  g.n_ = n;
  g.c_ = std::move(c);
  g.tol_ = tol;
  g.labels_ = std::move(labels);
  return g;
}

StructureTensor LieAlgebra::tensor() const {
  StructureTensor t(n_, std::vector<std::vector<double>>(n_, std::vector<double>(n_)));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int k = 0; k < n_; ++k) t[a][b][k] = c(a, b, k);
  return t;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != n_ || y.size() != n_)
    throw DimensionMismatch("bracket arguments must have length " + std::to_string(n_));
  Vec out = Vec::Zero(n_);
  for (int a = 0; a < n_; ++a) {
    if (x[a] == 0.0) continue;
    for (int b = 0; b < n_; ++b) {
      const double w = x[a] * y[b];
      if (w == 0.0) continue;
      const double* row = &c_[(a * n_ + b) * n_];
      for (int k = 0; k < n_; ++k) out[k] += w * row[k];
    }
  }
  return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != n_) throw DimensionMismatch("ad argument must have length " + std::to_string(n_));
  Mat m = Mat::Zero(n_, n_);
  for (int a = 0; a < n_; ++a) {
    if (x[a] == 0.0) continue;
    for (int b = 0; b < n_; ++b)
      for (int k = 0; k < n_; ++k) m(k, b) += x[a] * c(a, b, k);
  }
  return m;
}

Mat LieAlgebra::coad(const Vec& x) const { return -ad(x).transpose(); }

Mat LieAlgebra::ad_basis(int a) const {
  Vec e = Vec::Zero(n_);
  e[a] = 1.0;
  return ad(e);
}

LieAlgebra LieAlgebra::opposite() const {
  std::vector<double> neg(c_.size());
  std::transform(c_.begin(), c_.end(), neg.begin(), [](double v) { return -v; });
  return unchecked(n_, std::move(neg), tol_, labels_);
}

bool LieAlgebra::is_abelian() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

std::vector<int> LieAlgebra::central_basis_indices() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a) {
    bool central = true;
    for (int b = 0; b < n_ && central; ++b)
      for (int k = 0; k < n_; ++k)
        if (c(a, b, k) != 0.0) {
          central = false;
          break;
        }
    if (central) out.push_back(a);
  }
  return out;
}

bool LieAlgebra::euclidean_invariant(double tol) const {
  for (int a = 0; a < n_; ++a) {
    const Mat m = ad_basis(a);
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

StructureTensor preset_tensor(const std::string& preset) {
  auto zero = [](int n) {
    return StructureTensor(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  };
  auto set = [](StructureTensor& t, int a, int b, int k, double v) {
    t[a][b][k] = v;
    t[b][a][k] = -v;
  };
  if (preset == "u1") return zero(1);
  if (preset == "so3" || preset == "su2") {
    StructureTensor t = zero(3);
    set(t, 0, 1, 2, 1.0);
    set(t, 1, 2, 0, 1.0);
    set(t, 2, 0, 1, 1.0);
    return t;
  }
  if (preset == "heisenberg") {
    StructureTensor t = zero(3);
    set(t, 0, 1, 2, 1.0);
    return t;
  }
  if (preset == "su3") {
    // totally antisymmetric f_abc of the Gell-Mann basis, 1-based triples
    struct F {
      int a, b, c;
      double v;
    };
    const double h = 0.5;
    const double s = std::sqrt(3.0) / 2.0;
    const F table[] = {{1, 2, 3, 1.0}, {1, 4, 7, h},  {1, 6, 5, h},  {2, 4, 6, h},
                       {2, 5, 7, h},   {3, 4, 5, h},  {3, 7, 6, h},  {4, 5, 8, s},
                       {6, 7, 8, s}};
    StructureTensor t = zero(8);
    for (const auto& f : table) {
      const int a = f.a - 1, b = f.b - 1, c = f.c - 1;
      set(t, a, b, c, f.v);
      set(t, b, c, a, f.v);
      set(t, c, a, b, f.v);
    }
    return t;
  }
  if (preset == "so3+su3") return direct_sum(build_algebra("so3"), build_algebra("su3")).tensor();
  throw UnknownPreset("unknown algebra preset '" + preset + "'");
}

std::vector<std::string> preset_names() {
  return {"u1", "so3", "su2", "su3", "so3+su3", "heisenberg"};
}

LieAlgebra build_algebra(const std::string& preset, double tol) {
  if (preset == "so3+su3") {
    LieAlgebra g = direct_sum(build_algebra("so3", tol), build_algebra("su3", tol));
    return LieAlgebra(g.dim(), g.constants(), tol, g.labels());
  }
  const StructureTensor t = preset_tensor(preset);
  const int n = static_cast<int>(t.size());
  std::vector<std::string> labels;
  if (preset == "su3")
    labels = default_labels("l", n);
  else if (preset == "u1")
    labels = {"q"};
  else
    labels = default_labels("e", n);
  return LieAlgebra(n, flatten(t), tol, labels);
}

LieAlgebra build_algebra(const StructureTensor& c, double tol) {
  const int n = static_cast<int>(c.size());
  return LieAlgebra(n, flatten(c), tol);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

Vec bracket_vec(const LieAlgebra& g, const Vec& x, const Vec& y) { return g.bracket(x, y); }

AdCoad ad_coad(const LieAlgebra& g, const Vec& x) {
  AdCoad out;
  out.ad = g.ad(x);
  out.coad = -out.ad.transpose();
  return out;
}

JacobiReport jacobi_report(int n, const std::vector<double>& c) {
  auto C = [&](int a, int b, int k) { return c[(a * n + b) * n + k]; };
  JacobiReport rep;
  // [[e_a,e_b],e_c]_m = sum_k c_ab^k c_kc^m
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc) {
        double worst = 0.0;
        for (int m = 0; m < n; ++m) {
          double s = 0.0;
          for (int k = 0; k < n; ++k)
            s += C(a, b, k) * C(k, cc, m) + C(b, cc, k) * C(k, a, m) +
                 C(cc, a, k) * C(k, b, m);
          worst = std::max(worst, std::abs(s));
        }
        if (worst > rep.residual) rep = JacobiReport{worst, a, b, cc};
      }
  return rep;
}

double jacobi_residual(const LieAlgebra& g) { return jacobi_report(g.dim(), g.constants()).residual; }

LieAlgebra direct_sum(const LieAlgebra& g1, const LieAlgebra& g2) {
  const int n1 = g1.dim(), n2 = g2.dim(), n = n1 + n2;
  std::vector<double> c(static_cast<size_t>(n) * n * n, 0.0);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b)
      for (int k = 0; k < n1; ++k) c[(a * n + b) * n + k] = g1.c(a, b, k);
  for (int a = 0; a < n2; ++a)
    for (int b = 0; b < n2; ++b)
      for (int k = 0; k < n2; ++k) c[((n1 + a) * n + n1 + b) * n + n1 + k] = g2.c(a, b, k);
  std::vector<std::string> labels;
  if (!g1.labels().empty() && !g2.labels().empty()) {
    labels = g1.labels();
    labels.insert(labels.end(), g2.labels().begin(), g2.labels().end());
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) labels.clear();
  }
  return LieAlgebra::unchecked(n, std::move(c), std::max(g1.tol(), g2.tol()), labels);
}

Subspace idealizer(const LieAlgebra& g, const Subspace& c) {
  const int n = g.dim();
  if (c.ambient_dim() != n) throw DimensionMismatch("idealizer: subspace ambient dim mismatch");
  if (c.dim() == 0) return Subspace::whole(n);
  const Mat qc = c.orthonormal();
  const Mat comp = Mat::Identity(n, n) - qc * qc.transpose();
  const int k = c.dim();
  Mat M(n * k, n);
  for (int j = 0; j < n; ++j) {
    const Mat block = comp * g.ad_basis(j) * qc;
    M.col(j) = Eigen::Map<const Vec>(block.data(), n * k);
  }
  return Subspace(n, null_space(M, 1e-10));
}

Mat killing_form(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<Mat> ads;
  for (int a = 0; a < n; ++a) ads.push_back(g.ad_basis(a));
  Mat K(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) K(a, b) = K(b, a) = (ads[a] * ads[b]).trace();
  return K;
}

QuotientAlgebra quotient_with_basis(const LieAlgebra& g, const Subspace& N, const Subspace& c,
                                    double tol) {
  const int n = g.dim();
  if (N.ambient_dim() != n || c.ambient_dim() != n)
    throw DimensionMismatch("quotient: subspace ambient dim mismatch");
  if (!N.contains(c, tol)) throw NotASubalgebra("quotient: c is not contained in N");
  const Mat qn = N.orthonormal();
  const Mat qc = c.orthonormal();
  const Mat pn = qn * qn.transpose();
  const Mat pc = qc * qc.transpose();
  for (int i = 0; i < qn.cols(); ++i)
    for (int j = i + 1; j < qn.cols(); ++j) {
      const Vec br = g.bracket(qn.col(i), qn.col(j));
      if ((br - pn * br).norm() > tol * std::max(1.0, br.norm()))
        throw NotASubalgebra("quotient: N is not closed under the bracket");
    }
  for (int i = 0; i < qn.cols(); ++i)
    for (int j = 0; j < qc.cols(); ++j) {
      const Vec br = g.bracket(qn.col(i), qc.col(j));
      if ((br - pc * br).norm() > tol * std::max(1.0, br.norm()))
        throw NotAnIdeal("quotient: c is not an ideal of N");
    }
  const Mat T = orth_complement_within(qn, qc, 1e-8);
  const int k = static_cast<int>(T.cols());
  if (k == 0) throw InvalidParams("quotient: N/c is zero-dimensional");
  std::vector<double> cq(static_cast<size_t>(k) * k * k, 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const Vec coeff = T.transpose() * g.bracket(T.col(a), T.col(b));
      for (int m = 0; m < k; ++m) cq[(a * k + b) * k + m] = coeff[m];
    }
  // exact antisymmetry so the validated constructor accepts the result
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b)
      for (int m = 0; m < k; ++m) {
        const double v = a == b ? 0.0 : 0.5 * (cq[(a * k + b) * k + m] - cq[(b * k + a) * k + m]);
        cq[(a * k + b) * k + m] = v;
        cq[(b * k + a) * k + m] = -v;
      }
  QuotientAlgebra out{LieAlgebra(k, std::move(cq), std::max(tol, g.tol())), T};
  return out;
}

LieAlgebra quotient(const LieAlgebra& g, const Subspace& N, const Subspace& c, double tol) {
  return quotient_with_basis(g, N, c, tol).algebra;
}

Subspace derived_algebra(const LieAlgebra& g) {
  const int n = g.dim();
  Mat brackets(n, n * n);
  int col = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < n; ++k) brackets(k, col) = g.c(a, b, k);
      ++col;
    }
  return Subspace(n, orth(brackets, 1e-10));
}

Subspace center(const LieAlgebra& g) {
  const int n = g.dim();
  Mat M(n * n, n);
  for (int j = 0; j < n; ++j) {
    const Mat a = g.ad_basis(j);
    M.col(j) = Eigen::Map<const Vec>(a.data(), n * n);
  }
  return Subspace(n, null_space(M, 1e-10));
}

}  // namespace swkit
