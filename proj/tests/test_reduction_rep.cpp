#include "doctest.h"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"
#include "swkit/reduction_rep.hpp"

#include <cmath>

using namespace swkit;

namespace {

Vec unit(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

LinearRep adjoint(const LieAlgebra& g) {
  LinearRep r;
  r.dim = g.dim();
  for (int a = 0; a < g.dim(); ++a) r.generators.push_back(g.ad(unit(g.dim(), a)));
  return r;
}

Subspace manton_c() {
  Vec v = Vec::Zero(11);
  v[2] = 1.0;
  v[10] = -2.0 * std::sqrt(3.0);
  return Subspace::span(v);
}

}  // namespace

TEST_CASE("annihilators") {
  const LieAlgebra so3 = build_algebra("so3");
  const Subspace a = annihilator(so3, Subspace::span(unit(3, 2)));
  CHECK(a.dim() == 2);
  CHECK(std::abs(a.basis().col(0)[2]) <= 1e-14);
  CHECK(annihilator(so3, Subspace::whole(3)).dim() == 0);
  CHECK(annihilator(so3, Subspace::zero(3)).dim() == 3);
  CHECK(annihilator(build_algebra("so3+su3"), manton_c()).dim() == 10);
}

TEST_CASE("induced actions on quotient and annihilator") {
  const LieAlgebra so3 = build_algebra("so3");
  const QuotientActions q = induced_quotient_action(so3, Subspace::span(unit(3, 2)));
  REQUIRE(q.on_annihilator.generators.size() == 1);
  const Mat G = q.on_annihilator.generators[0];
  CHECK((G + G.transpose()).norm() <= 1e-14);
  CHECK((G * G + Mat::Identity(2, 2)).norm() <= 1e-14);
  CHECK(q.duality_residual <= 1e-14);

  const LieAlgebra ab = direct_sum(build_algebra("u1"), build_algebra("u1"));
  const QuotientActions z = induced_quotient_action(ab, Subspace::span(unit(2, 0)));
  CHECK(z.on_annihilator.generators.at(0).norm() == 0.0);
  CHECK(z.on_quotient.generators.at(0).norm() == 0.0);

  Mat bad = Mat::Zero(3, 2);
  bad(0, 0) = bad(2, 1) = 1.0;
  CHECK_THROWS_AS(induced_quotient_action(so3, Subspace::span(unit(3, 2)), bad), InvalidParams);
  Mat plane(3, 2);
  plane << 1, 0, 0, 1, 0, 0;
  CHECK_THROWS_AS(induced_quotient_action(so3, Subspace(3, plane)), NotASubalgebra);
}

TEST_CASE("symmetric powers") {
  Mat G(2, 2);
  G << 0, -1, 1, 0;
  const Mat S = sym_power_matrix(G, 2);
  Mat expect(3, 3);
  expect << 0, -1, 0, 2, 0, -2, 0, 1, 0;
  CHECK(S == expect);
  CHECK(sym_power_matrix(G, 1) == G);
  CHECK(monomial_basis(10, 2).size() == 55);
  CHECK(monomial_basis(3, 3).size() == 10);
  CHECK(sym_power_matrix(Mat::Zero(10, 10), 2).rows() == 55);
  CHECK_THROWS_AS(sym_power_matrix(G, 4), UnsupportedPower);

  // S^k of a homomorphism is a homomorphism.
  const LinearRep ad = adjoint(build_algebra("so3"));
  for (int k = 1; k <= 3; ++k) CHECK(sym_power_rep(ad, k).closure_residual() <= 1e-12);
  CHECK(ad.closure_residual() <= 1e-14);
}

TEST_CASE("invariant subspaces") {
  LinearRep zero{4, {Mat::Zero(4, 4), Mat::Zero(4, 4)}};
  const InvariantSpace all = invariant_subspace(zero);
  CHECK(all.dim() == 4);
  CHECK((all.basis.transpose() * all.basis - Mat::Identity(4, 4)).norm() <= 1e-12);

  const LinearRep ad = adjoint(build_algebra("so3"));
  CHECK(invariant_subspace(ad).dim() == 0);
  const LinearRep s2 = sym_power_rep(ad, 2);
  const InvariantSpace inv = invariant_subspace(s2);
  CHECK(inv.dim() == 1);
  CHECK(inv.annihilation_residual(s2) <= 1e-12);
  CHECK(invariant_subspace(sym_power_rep(ad, 3)).dim() == 0);
  CHECK(invariant_subspace(tensor_rep(ad, ad)).dim() == 1);
  CHECK(invariant_subspace(sym_power_rep(adjoint(build_algebra("su3")), 3)).dim() == 1);

  const LinearRep r = restrict_rep(s2, inv.basis);
  CHECK(r.dim == 1);
  CHECK(r.generators[0].norm() <= 1e-12);
}

TEST_CASE("Casimir spectrum") {
  const LinearRep trivial{2, {Mat::Zero(2, 2), Mat::Zero(2, 2), Mat::Zero(2, 2)}};
  const InvariantSpace two{2, Mat::Identity(2, 2)};
  const auto t = casimir_spectrum(trivial, two);
  REQUIRE(t.size() == 1);
  CHECK(t[0].multiplicity == 2);
  CHECK(t[0].spin == 0.0);

  const LinearRep ad = adjoint(build_algebra("su2"));
  const auto a = casimir_spectrum(ad, InvariantSpace{3, Mat::Identity(3, 3)});
  REQUIRE(a.size() == 1);
  CHECK(a[0].eigenvalue == doctest::Approx(-2.0));
  CHECK(a[0].multiplicity == 3);
  CHECK(a[0].spin == doctest::Approx(1.0));

  const LinearRep s2 = sym_power_rep(ad, 2);
  const auto b = casimir_spectrum(s2, InvariantSpace{6, Mat::Identity(6, 6)});
  REQUIRE(b.size() == 2);
  CHECK(b[0].eigenvalue == doctest::Approx(0.0));
  CHECK(b[0].multiplicity == 1);
  CHECK(b[1].eigenvalue == doctest::Approx(-6.0));
  CHECK(b[1].multiplicity == 5);
  CHECK(b[1].spin == doctest::Approx(2.0));

  LinearRep off = ad;
  off.generators[2] *= 2.0;
  CHECK_THROWS_AS(casimir_spectrum(off, InvariantSpace{3, Mat::Identity(3, 3)}), NotSu2Triple);
}

TEST_CASE("so3 + su3 reduction") {
  const ReductionReport r = manton_report();
  CHECK(r.dim_g == 11);
  CHECK(r.dim_c == 1);
  CHECK(r.dim_c0 == 10);
  CHECK(r.dim_idealizer == 5);
  CHECK(r.dim_gtilde == 4);
  CHECK(r.dim_gtilde_center == 1);
  CHECK(r.dim_gtilde_derived == 3);
  CHECK(r.gtilde_jacobi_residual <= 1e-10);
  REQUIRE(r.weights.size() == 3);
  CHECK(r.weights[0].weight == 0);
  CHECK(r.weights[0].real_dim == 4);
  CHECK(r.weights[1].weight == -1);
  CHECK(r.weights[1].real_dim == 2);
  CHECK(r.weights[2].weight == -3);
  CHECK(r.weights[2].real_dim == 4);
  CHECK(r.block_dims() == std::vector<int>{10, 1, 4});
  CHECK(r.cross_invariants == 0);
  CHECK(r.dim_s2_invariants == 15);
  CHECK(r.dim_gtilde_invariants == 4);
  CHECK(r.duality_residual <= 1e-12);
  CHECK(r.annihilation_residual <= 1e-9);
  CHECK(r.su2_relation_residual <= 1e-8);

  REQUIRE(r.isotypic.size() == 3);
  int total = 0;
  for (const auto& c : r.isotypic) total += c.multiplicity;
  CHECK(total == r.dim_s2_invariants);
  CHECK(r.isotypic[0].spin == 0.0);
  CHECK(r.isotypic[0].multiplicity == 4);
  CHECK(r.isotypic[1].spin == doctest::Approx(1.0));
  CHECK(r.isotypic[1].multiplicity == 6);
  CHECK(r.isotypic[2].spin == doctest::Approx(2.0));
  CHECK(r.isotypic[2].multiplicity == 5);
  CHECK(r.isotypic[0].multiplicity == r.dim_gtilde_invariants);
}

TEST_CASE("reduction is stable under rotations of the c0 basis") {
  Rng rng(99);
  const ReductionReport ref = manton_report();
  for (int t = 0; t < 3; ++t) {
    const Mat O = rng.random_orthogonal(10);
    const ReductionReport r = manton_report(&O);
    CHECK(r.block_dims() == ref.block_dims());
    CHECK(r.dim_s2_invariants == ref.dim_s2_invariants);
    CHECK(r.dim_gtilde_invariants == ref.dim_gtilde_invariants);
    REQUIRE(r.isotypic.size() == ref.isotypic.size());
    for (std::size_t i = 0; i < r.isotypic.size(); ++i)
      CHECK(r.isotypic[i].multiplicity == ref.isotypic[i].multiplicity);
  }
}
