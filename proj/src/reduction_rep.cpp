#include "swkit/reduction_rep.hpp"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace swkit {

double LinearRep::closure_residual() const {
  if (generators.empty()) return 0.0;
  Mat span(dim * dim, static_cast<long>(generators.size()));
  for (size_t i = 0; i < generators.size(); ++i)
    span.col(static_cast<long>(i)) = Eigen::Map<const Vec>(generators[i].data(), dim * dim);
  const Mat q = orth(span, 1e-10);
  double worst = 0.0;
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i + 1; j < generators.size(); ++j) {
      const Mat c = generators[i] * generators[j] - generators[j] * generators[i];
      const Vec v = Eigen::Map<const Vec>(c.data(), dim * dim);
      worst = std::max(worst, (v - q * (q.transpose() * v)).norm());
    }
  return worst;
}

double InvariantSpace::annihilation_residual(const LinearRep& rep) const {
  double worst = 0.0;
  for (const Mat& G : rep.generators)
    for (int j = 0; j < dim(); ++j) worst = std::max(worst, (G * basis.col(j)).norm());
  return worst;
}

Subspace annihilator(const LieAlgebra& g, const Subspace& c) {
  if (c.ambient_dim() != g.dim()) throw DimensionMismatch("annihilator: ambient dimension");
  if (c.dim() == 0) return Subspace::whole(g.dim());
  const Mat q = null_space(c.basis().transpose(), 1e-10);
  return Subspace(g.dim(), q);
}

Mat annihilator_action(const LieAlgebra& g, const Mat& Q, const Vec& xi) {
  return Q.transpose() * g.coad(xi) * Q;
}

QuotientActions induced_quotient_action(const LieAlgebra& g, const Subspace& c, double tol) {
  return induced_quotient_action(g, c, annihilator(g, c).basis(), tol);
}

QuotientActions induced_quotient_action(const LieAlgebra& g, const Subspace& c, const Mat& Q,
                                        double tol) {
  const int n = g.dim();
  if (c.ambient_dim() != n) throw DimensionMismatch("induced_quotient_action: ambient dimension");
  if (Q.rows() != n || Q.cols() != n - c.dim())
    throw DimensionMismatch("induced_quotient_action: complement basis has wrong shape");
  if ((Q.transpose() * c.basis()).cwiseAbs().maxCoeff() > tol ||
      (Q.transpose() * Q - Mat::Identity(Q.cols(), Q.cols())).cwiseAbs().maxCoeff() > tol)
    throw InvalidParams("complement basis must be orthonormal and orthogonal to c");
  const Mat pc = c.projector();
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i + 1; j < c.dim(); ++j) {
      const Vec br = g.bracket(c.basis().col(i), c.basis().col(j));
      if ((br - pc * br).norm() > tol * std::max(1.0, br.norm()))
        throw NotASubalgebra("c is not closed under the bracket");
    }
  QuotientActions out;
  out.basis = Q;
  const int k = static_cast<int>(Q.cols());
  out.on_quotient.dim = k;
  out.on_annihilator.dim = k;
  for (int i = 0; i < c.dim(); ++i) {
    const Vec xi = c.basis().col(i);
    const Mat ad = g.ad(xi);
    const Mat Gq = Q.transpose() * ad * Q;
    const Mat Ga = Q.transpose() * (-ad.transpose()) * Q;
    out.on_quotient.generators.push_back(Gq);
    out.on_annihilator.generators.push_back(Ga);
    if (k > 0)
      out.duality_residual =
          std::max(out.duality_residual, (Ga + Gq.transpose()).cwiseAbs().maxCoeff());
  }
  return out;
}

std::vector<std::vector<int>> monomial_basis(int dim, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) {
    out.push_back(std::vector<int>(dim, 0));
    return out;
  }
  std::vector<int> idx(k, 0);
  while (true) {
    std::vector<int> e(dim, 0);
    for (int i : idx) ++e[i];
    out.push_back(e);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == dim - 1) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[pos];
  }
  return out;
}

Mat sym_power_matrix(const Mat& G, int k) {
  if (k < 1 || k > 3) throw UnsupportedPower("symmetric power " + std::to_string(k) + " not in {1,2,3}");
  const int d = static_cast<int>(G.rows());
  if (k == 1) return G;
  const auto basis = monomial_basis(d, k);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
  const int N = static_cast<int>(basis.size());
  Mat S = Mat::Zero(N, N);
  for (int col = 0; col < N; ++col) {
    const std::vector<int>& alpha = basis[col];
    for (int j = 0; j < d; ++j) {
      if (alpha[j] == 0) continue;
      std::vector<int> beta = alpha;
      --beta[j];
      for (int i = 0; i < d; ++i) {
        if (G(i, j) == 0.0) continue;
        ++beta[i];
        S(index.at(beta), col) += alpha[j] * G(i, j);
        --beta[i];
      }
    }
  }
  return S;
}

LinearRep sym_power_rep(const LinearRep& rep, int k) {
  if (k < 1 || k > 3) throw UnsupportedPower("symmetric power " + std::to_string(k) + " not in {1,2,3}");
  LinearRep out;
  out.dim = static_cast<int>(monomial_basis(rep.dim, k).size());
  for (const Mat& G : rep.generators) out.generators.push_back(sym_power_matrix(G, k));
  return out;
}

LinearRep tensor_rep(const LinearRep& a, const LinearRep& b) {
  if (a.generators.size() != b.generators.size())
    throw DimensionMismatch("tensor_rep: generator counts differ");
  LinearRep out;
  out.dim = a.dim * b.dim;
  const Mat Ib = Mat::Identity(b.dim, b.dim);
  for (size_t g = 0; g < a.generators.size(); ++g) {
    Mat T = Mat::Zero(out.dim, out.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) {
        T.block(i * b.dim, j * b.dim, b.dim, b.dim) += a.generators[g](i, j) * Ib;
        if (i == j) T.block(i * b.dim, j * b.dim, b.dim, b.dim) += b.generators[g];
      }
    out.generators.push_back(T);
  }
  return out;
}

InvariantSpace invariant_subspace(const LinearRep& rep, double rel_tol) {
  InvariantSpace out;
  out.ambient_dim = rep.dim;
  if (rep.generators.empty()) {
    out.basis = Mat::Identity(rep.dim, rep.dim);
    return out;
  }
  Mat stacked(rep.dim * static_cast<long>(rep.generators.size()), rep.dim);
  for (size_t i = 0; i < rep.generators.size(); ++i)
    stacked.block(static_cast<long>(i) * rep.dim, 0, rep.dim, rep.dim) = rep.generators[i];
  out.basis = null_space(stacked, rel_tol);
  return out;
}

LinearRep restrict_rep(const LinearRep& rep, const Mat& B) {
  LinearRep out;
  out.dim = static_cast<int>(B.cols());
  for (const Mat& G : rep.generators) out.generators.push_back(B.transpose() * G * B);
  return out;
}

std::vector<IsotypicComponent> casimir_spectrum(const LinearRep& triple, const InvariantSpace& space) {
  if (triple.generators.size() != 3) throw NotSu2Triple("casimir_spectrum needs three generators");
  const LinearRep J = restrict_rep(triple, space.basis);
  const int d = J.dim;
  if (d == 0) return {};
  double rel = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Mat& a = J.generators[i];
    const Mat& b = J.generators[(i + 1) % 3];
    const Mat& c = J.generators[(i + 2) % 3];
    rel = std::max(rel, (a * b - b * a - c).cwiseAbs().maxCoeff());
  }
  if (rel > 1e-8)
    throw NotSu2Triple("generators violate [J_i, J_j] = eps_ijk J_k (residual " +
                       std::to_string(rel) + ")");
  Mat C = Mat::Zero(d, d);
  for (const Mat& g : J.generators) C += g * g;
  Eigen::EigenSolver<Mat> es(C, false);
  std::vector<double> ev;
  for (int i = 0; i < d; ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  std::vector<IsotypicComponent> out;
  for (double v : ev) {
    if (!out.empty() && std::abs(out.back().eigenvalue - v) <= 1e-6 * std::max(1.0, std::abs(v))) {
      const int k = out.back().multiplicity;
      out.back().eigenvalue = (out.back().eigenvalue * k + v) / (k + 1);
      out.back().multiplicity = k + 1;
    } else {
      out.push_back({v, 1, 0.0});
    }
  }
  for (auto& comp : out) {
    const double disc = std::max(0.0, 1.0 - 4.0 * comp.eigenvalue);
    comp.spin = std::max(0.0, 0.5 * (std::sqrt(disc) - 1.0));
  }
  return out;
}

std::vector<int> ReductionReport::block_dims() const {
  std::vector<int> out;
  for (const auto& w : weights) out.push_back(w.sym2_invariants);
  return out;
}

ReductionReport manton_report(const Mat* c0_rotation) {
  const LieAlgebra g = build_algebra("so3+su3");
  const int n = g.dim();
  Vec v = Vec::Zero(n);
  v[2] = 1.0;
  v[10] = -2.0 * std::sqrt(3.0);
  const Subspace c = Subspace::span(v);

  ReductionReport rep;
  rep.dim_g = n;
  rep.dim_c = c.dim();

  Mat Q = annihilator(g, c).basis();
  if (c0_rotation) {
    if (c0_rotation->rows() != Q.cols() || c0_rotation->cols() != Q.cols())
      throw DimensionMismatch("c0 rotation must be square of size dim c0");
    Q = Q * (*c0_rotation);
  }
  rep.dim_c0 = static_cast<int>(Q.cols());
  const QuotientActions qa = induced_quotient_action(g, c, Q);
  rep.duality_residual = qa.duality_residual;
  const Mat& G = qa.on_annihilator.generators.front();
  const int k = rep.dim_c0;

  // weight blocks: G has eigenvalues +-i w
  Eigen::EigenSolver<Mat> es(G, false);
  std::vector<int> ws;
  for (int i = 0; i < k; ++i) ws.push_back(static_cast<int>(std::lround(std::abs(es.eigenvalues()[i].imag()))));
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  std::vector<Mat> blocks;
  int total = 0;
  const double floor = 1e-12 * std::max(1.0, G.cwiseAbs().maxCoeff());
  auto restricted = [&](const Mat& B) {
    Mat r = B.transpose() * G * B;
    r = r.unaryExpr([&](double x) { return std::abs(x) <= floor ? 0.0 : x; });
    return r;
  };
  for (int w : ws) {
    const Mat Wb = null_space(G * G + static_cast<double>(w * w) * Mat::Identity(k, k), 1e-9);
    blocks.push_back(Wb);
    total += static_cast<int>(Wb.cols());
    LinearRep r{static_cast<int>(Wb.cols()), {restricted(Wb)}};
    WeightBlock wb;
    wb.weight = -w;
    wb.real_dim = r.dim;
    wb.sym2_invariants = invariant_subspace(sym_power_rep(r, 2)).dim();
    rep.weights.push_back(wb);
  }
  if (total != k) throw NumericalCheckFailed("weight spaces do not fill c0");
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 1; j < blocks.size(); ++j) {
      LinearRep a{static_cast<int>(blocks[i].cols()), {restricted(blocks[i])}};
      LinearRep b{static_cast<int>(blocks[j].cols()), {restricted(blocks[j])}};
      rep.cross_invariants += invariant_subspace(tensor_rep(a, b)).dim();
    }

  const LinearRep s2 = sym_power_rep(qa.on_annihilator, 2);
  const InvariantSpace inv = invariant_subspace(s2);
  rep.dim_s2_invariants = inv.dim();
  rep.annihilation_residual = inv.annihilation_residual(s2);

  const Subspace N = idealizer(g, c);
  rep.dim_idealizer = N.dim();
  const QuotientAlgebra gt = quotient_with_basis(g, N, c);
  rep.dim_gtilde = gt.algebra.dim();
  rep.gtilde_jacobi_residual = jacobi_residual(gt.algebra);
  rep.dim_gtilde_center = center(gt.algebra).dim();
  const Subspace D = derived_algebra(gt.algebra);
  rep.dim_gtilde_derived = D.dim();

  // invariants of the whole idealizer inside S^2(c0)
  LinearRep nrep;
  nrep.dim = k;
  const Mat qn = N.orthonormal();
  for (int i = 0; i < qn.cols(); ++i) nrep.generators.push_back(annihilator_action(g, Q, qn.col(i)));
  const LinearRep ns2 = sym_power_rep(nrep, 2);
  rep.dim_gtilde_invariants = invariant_subspace(ns2).dim();

  // su(2) triple in the derived algebra, normalized by -Killing/2
  if (D.dim() != 3) throw NotSu2Triple("derived algebra of the quotient is not 3-dimensional");
  const Mat K = killing_form(gt.algebra);
  const Mat Db = D.orthonormal();
  auto ip = [&](const Vec& a, const Vec& b) { return -0.5 * a.dot(K * b); };
  Vec J1 = Db.col(0);
  J1 /= std::sqrt(ip(J1, J1));
  Vec J2 = Db.col(1) - ip(Db.col(1), J1) * J1;
  J2 /= std::sqrt(ip(J2, J2));
  const Vec J3 = gt.algebra.bracket(J1, J2);
  rep.su2_relation_residual = std::max((gt.algebra.bracket(J2, J3) - J1).cwiseAbs().maxCoeff(),
                                       (gt.algebra.bracket(J3, J1) - J2).cwiseAbs().maxCoeff());
  LinearRep triple;
  triple.dim = s2.dim;
  for (const Vec& J : {J1, J2, J3}) {
    const Vec xi = gt.representatives * J;
    triple.generators.push_back(sym_power_matrix(annihilator_action(g, Q, xi), 2));
  }
  rep.isotypic = casimir_spectrum(triple, inv);
  int iso_total = 0;
  for (const auto& comp : rep.isotypic) iso_total += comp.multiplicity;
  if (iso_total != rep.dim_s2_invariants) throw NumericalCheckFailed("isotypic dims do not sum up");
  return rep;
}

}  // namespace swkit
