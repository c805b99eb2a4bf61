#include "doctest.h"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"
#include "swkit/poisson.hpp"

using namespace swkit;

namespace {

ScalarField coord(int d, int i) { return ScalarField::from_polynomial(Polynomial::variable(d, i)); }

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<long>(v.size()));
  long i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<PoissonStructure> builtins() {
  return {PoissonStructure::canonical(1), PoissonStructure::canonical(3),
          PoissonStructure::lie_poisson(build_algebra("so3")),
          PoissonStructure::lie_poisson(build_algebra("su3")),
          PoissonStructure::lie_poisson(build_algebra("heisenberg")),
          PoissonStructure::darboux_product(2, build_algebra("so3")),
          PoissonStructure::darboux_product(1, build_algebra("u1"))};
}

/// w_ab = eps_abk r_k (1 + |r|^2).
StructureFunctionField cubic_so3_field() {
  const LieAlgebra g = build_algebra("so3");
  PolyMatrix w(3, 3, 3);
  Polynomial s = Polynomial::constant(3, 1.0);
  for (int k = 0; k < 3; ++k) s += Polynomial::variable(3, k) * Polynomial::variable(3, k);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k)
        if (g.c(a, b, k) != 0.0) w(a, b) += Polynomial::variable(3, k) * s * g.c(a, b, k);
  return StructureFunctionField(w);
}

}  // namespace

TEST_CASE("built-in bivectors") {
  const Mat W = PoissonStructure::canonical(1).bivector_at(vec({0.3, -2.0}));
  Mat J(2, 2);
  J << 0, 1, -1, 0;
  CHECK(W == J);

  const Mat L = PoissonStructure::lie_poisson(build_algebra("so3")).bivector_at(vec({0, 0, 1}));
  CHECK(L(0, 1) == 1.0);
  CHECK(L(0, 2) == 0.0);
  CHECK(L(1, 2) == 0.0);

  CHECK(PoissonStructure::darboux_product(2, build_algebra("so3")).dim() == 7);
  CHECK_THROWS_AS(PoissonStructure::canonical(1).bivector_at(vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("bivectors are antisymmetric at random points") {
  Rng rng(8);
  for (const auto& P : builtins())
    for (int t = 0; t < 100; ++t) {
      const Mat W = P.bivector_at(rng.uniform_vec(P.dim(), -2, 2));
      CHECK((W + W.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("fundamental brackets") {
  const PoissonStructure C = PoissonStructure::canonical(1);
  CHECK(poisson_bracket(C, coord(2, 0), coord(2, 1), vec({0.7, 0.1})) == 1.0);
  const PoissonStructure L = PoissonStructure::lie_poisson(build_algebra("so3"));
  CHECK(poisson_bracket(L, coord(3, 0), coord(3, 1), vec({0, 0, 1})) == doctest::Approx(1.0));
  const ScalarField f = ScalarField::from_polynomial(Polynomial::variable(3, 0) * Polynomial::variable(3, 2));
  CHECK(poisson_bracket(L, f, f, vec({0.2, 0.5, -1.1})) == doctest::Approx(0.0));
}

TEST_CASE("Leibniz rule and antisymmetry of the bracket") {
  Rng rng(31);
  const PoissonStructure P = PoissonStructure::darboux_product(1, build_algebra("so3"));
  const int d = P.dim();
  const Polynomial a = Polynomial::variable(d, 0) * Polynomial::variable(d, 2) + Polynomial::variable(d, 3);
  const Polynomial b = Polynomial::variable(d, 4) * Polynomial::variable(d, 4) - Polynomial::variable(d, 1);
  const Polynomial c = Polynomial::variable(d, 2) + Polynomial::variable(d, 0) * Polynomial::variable(d, 4);
  const ScalarField f = ScalarField::from_polynomial(a), g = ScalarField::from_polynomial(b),
                    h = ScalarField::from_polynomial(c), gh = ScalarField::from_polynomial(b * c);
  for (int t = 0; t < 50; ++t) {
    const Vec z = rng.uniform_vec(d, -1, 1);
    const double lhs = poisson_bracket(P, f, gh, z);
    const double rhs = g(z) * poisson_bracket(P, f, h, z) + h(z) * poisson_bracket(P, f, g, z);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(std::abs(poisson_bracket(P, f, g, z) + poisson_bracket(P, g, f, z)) <= 1e-14);
  }
  // Same with finite-difference fields.
  const ScalarField ffd = ScalarField::from_function(d, [&](const Vec& z) { return a(z); });
  const ScalarField ghfd = ScalarField::from_function(d, [&](const Vec& z) { return (b * c)(z); });
  for (int t = 0; t < 10; ++t) {
    const Vec z = rng.uniform_vec(d, -1, 1);
    const double lhs = poisson_bracket(P, ffd, ghfd, z);
    const double rhs = g(z) * poisson_bracket(P, f, h, z) + h(z) * poisson_bracket(P, f, g, z);
    CHECK(std::abs(lhs - rhs) <= 1e-8);
  }
}

TEST_CASE("Hamiltonian vector fields") {
  const PoissonStructure C = PoissonStructure::canonical(1);
  const ScalarField free = ScalarField::from_polynomial(Polynomial(2, {{{0, 2}, 0.5}}));
  CHECK(hamiltonian_vector(C, free, vec({0, 2})).isApprox(vec({2, 0})));

  const double I1 = 1.0, I2 = 2.0, I3 = 3.0;
  const ScalarField euler =
      ScalarField::from_polynomial(Polynomial(3, {{{2, 0, 0}, 0.5 / I1}, {{0, 2, 0}, 0.5 / I2}, {{0, 0, 2}, 0.5 / I3}}));
  const PoissonStructure L = PoissonStructure::lie_poisson(build_algebra("so3"));
  const Vec r = vec({0.4, -0.7, 1.3});
  const Vec X = hamiltonian_vector(L, euler, r);
  CHECK(X[0] == doctest::Approx(r[1] * r[2] * (1 / I2 - 1 / I3)));
  CHECK(X[1] == doctest::Approx(r[2] * r[0] * (1 / I3 - 1 / I1)));
  CHECK(X[2] == doctest::Approx(r[0] * r[1] * (1 / I1 - 1 / I2)));

  const ScalarField k = ScalarField::from_polynomial(Polynomial::constant(3, 4.0));
  CHECK(hamiltonian_vector(L, k, r).norm() == 0.0);
}

TEST_CASE("Jacobi residuals of built-in and custom structures") {
  Rng rng(4);
  for (const auto& P : builtins())
    for (int t = 0; t < 20; ++t) CHECK(jacobi_residual_at(P, rng.uniform_vec(P.dim(), -1, 1)) <= 1e-10);

  // w_12 = r1 r2 alone: a rank-2 structure with integrable leaves, so the
  // cyclic sum vanishes identically.
  PolyMatrix w(3, 3, 3);
  w(0, 1) = Polynomial::variable(3, 0) * Polynomial::variable(3, 1);
  w(1, 0) = w(0, 1) * -1.0;
  CHECK(jacobi_residual_at(PoissonStructure::custom(w), vec({1, 1, 1})) == 0.0);

  // w_12 = 1, w_23 = z2 is not Poisson: the (1,2,3) sum is w^12 d_2 w^23 = 1.
  PolyMatrix v(3, 3, 3);
  v(0, 1) = Polynomial::constant(3, 1.0);
  v(1, 0) = Polynomial::constant(3, -1.0);
  v(1, 2) = Polynomial::variable(3, 1);
  v(2, 1) = Polynomial::variable(3, 1) * -1.0;
  const PoissonStructure bad = PoissonStructure::custom(v);
  const JacobiPointReport rep = jacobi_report_at(bad, vec({0.3, 0.2, -0.5}));
  CHECK(rep.residual == doctest::Approx(1.0));
  CHECK(rep.i == 0);
  CHECK(rep.j == 1);
  CHECK(rep.k == 2);

  // The same structure given as a callable uses finite-difference derivatives.
  const PoissonStructure badfn = PoissonStructure::custom(3, [&](const Vec& z) { return v.eval(z); });
  CHECK(jacobi_residual_at(badfn, vec({0.3, 0.2, -0.5})) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Casimir residuals") {
  Rng rng(9);
  std::vector<Vec> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(rng.uniform_vec(3, -1, 1));
  const PoissonStructure L = PoissonStructure::lie_poisson(build_algebra("so3"));
  const ScalarField r2 =
      ScalarField::from_polynomial(Polynomial(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, 1.0}}));
  CHECK(casimir_residual(L, r2, pts) <= 1e-12);

  const PoissonStructure C = PoissonStructure::canonical(1);
  CHECK(casimir_residual(C, coord(2, 0), {vec({0.3, 0.4})}) >= 1.0);

  const PoissonStructure U = PoissonStructure::lie_poisson(build_algebra("u1"));
  const ScalarField any = ScalarField::from_polynomial(Polynomial(1, {{{3}, 2.0}}));
  CHECK(casimir_residual(U, any, {vec({0.5}), vec({-2})}) == 0.0);
}

TEST_CASE("default Casimirs by structure kind") {
  std::vector<std::string> names;
  auto c = default_casimirs(PoissonStructure::lie_poisson(build_algebra("so3")), &names);
  REQUIRE(names == std::vector<std::string>{"r_sq"});
  c = default_casimirs(PoissonStructure::darboux_product(2, build_algebra("u1")), &names);
  REQUIRE(names == std::vector<std::string>{"r1"});
  CHECK(c[0](vec({1, 2, 3, 4, 5})) == 5.0);
  c = default_casimirs(PoissonStructure::canonical(2), &names);
  CHECK(c.empty());
  c = default_casimirs(PoissonStructure::lie_poisson(build_algebra("heisenberg")), &names);
  CHECK(names == std::vector<std::string>{"r3"});
}

TEST_CASE("transverse linearization") {
  const LieAlgebra so3 = build_algebra("so3");
  const PoissonStructure lin = PoissonStructure::darboux_product(1, StructureFunctionField::linear(so3));
  CHECK(linearize_transverse(lin).constants() == so3.constants());

  const PoissonStructure cubic = PoissonStructure::darboux_product(2, cubic_so3_field());
  const LieAlgebra back = linearize_transverse(cubic);
  for (size_t i = 0; i < so3.constants().size(); ++i)
    CHECK(back.constants()[i] == doctest::Approx(so3.constants()[i]));
  Rng rng(12);
  for (int t = 0; t < 10; ++t) CHECK(jacobi_residual_at(cubic, rng.uniform_vec(cubic.dim(), -1, 1)) <= 1e-10);

  PolyMatrix w(2, 2, 2);
  w(0, 1) = Polynomial::constant(2, 1.0);
  w(1, 0) = Polynomial::constant(2, -1.0);
  CHECK_THROWS_AS(linearize_transverse(PoissonStructure::darboux_product(1, StructureFunctionField(w))),
                  NotRankZero);
}

TEST_CASE("analytic gradients agree with finite differences") {
  Rng rng(21);
  const Polynomial p(3, {{{3, 1, 0}, 0.7}, {{0, 2, 2}, -1.3}, {{1, 0, 1}, 2.0}});
  const ScalarField f = ScalarField::from_polynomial(p);
  const ScalarField g = ScalarField::from_function(3, [&](const Vec& z) { return p(z); });
  CHECK(f.analytic());
  CHECK(!g.analytic());
  for (int t = 0; t < 20; ++t) {
    const Vec z = rng.uniform_vec(3, -1, 1);
    const Vec a = f.grad(z), b = g.grad(z);
    CHECK((a - b).norm() <= 1e-6 * std::max(1.0, a.norm()));
    CHECK((f.hess(z) - g.hess(z)).norm() <= 1e-5 * std::max(1.0, f.hess(z).norm()));
  }
  CHECK(f.scaled(-2.0)(vec({1, 1, 1})) == doctest::Approx(-2.0 * p(vec({1, 1, 1}))));
}
