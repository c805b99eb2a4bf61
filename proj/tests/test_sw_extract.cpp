#include "doctest.h"

#include "swkit/errors.hpp"
#include "swkit/linalg.hpp"
#include "swkit/sw_extract.hpp"

using namespace swkit;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<long>(v.size()));
  long i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Mat mat1(double v) { return Mat::Constant(1, 1, v); }

/// (p + 3 r)^2 + 2.5 r^2 in (x, p, r).
Polynomial worked_example() {
  return Polynomial(3, {{{0, 2, 0}, 1.0}, {{0, 1, 1}, 6.0}, {{0, 0, 2}, 11.5}});
}

VerticalJet make_jet(const Mat& pp, const Mat& pr, const Mat& rr) {
  VerticalJet j;
  j.m = static_cast<int>(pp.rows());
  j.n = static_cast<int>(rr.rows());
  j.x = Vec::Zero(j.m);
  j.Hpp = pp;
  j.Hpr = pr;
  j.Hrr = rr;
  return j;
}

QuadraticGaugeFields landau(double B) {
  QuadraticGaugeFields f;
  f.m = 2;
  f.n = 1;
  f.gamma_inv = PolyMatrix::constant(Mat::Identity(2, 2), 2);
  f.A = PolyMatrix(2, 1, 2);
  f.A(0, 0) = Polynomial::variable(2, 1) * (-0.5 * B);
  f.A(1, 0) = Polynomial::variable(2, 0) * (0.5 * B);
  f.chi_inv = PolyMatrix(1, 1, 2);
  return f;
}

}  // namespace

TEST_CASE("vertical jet of the worked example") {
  const ScalarField H = ScalarField::from_polynomial(worked_example());
  const VerticalJet j = vertical_jet(H, vec({0.0}), 1, 1);
  CHECK(j.Hpp(0, 0) == doctest::Approx(2.0));
  CHECK(j.Hpr(0, 0) == doctest::Approx(6.0));
  CHECK(j.Hrr(0, 0) == doctest::Approx(23.0));
  CHECK(j.grad_norm == 0.0);
  const Mat blk = j.block();
  CHECK((blk - blk.transpose()).norm() == 0.0);

  const SWFields f = extract_fields(j);
  CHECK(f.gamma_inv(0, 0) == doctest::Approx(2.0));
  CHECK(f.A(0, 0) == doctest::Approx(3.0));
  CHECK(f.chi_inv(0, 0) == doctest::Approx(5.0));
  CHECK(!f.chi_degenerate);
  CHECK(reconstruction_residual(j, f) <= 1e-14);
}

TEST_CASE("free particle jet is degenerate in the charge direction") {
  const ScalarField H = ScalarField::from_polynomial(Polynomial(5, {{{0, 0, 2, 0, 0}, 0.5}, {{0, 0, 0, 2, 0}, 0.5}}));
  const VerticalJet j = vertical_jet(H, vec({0.4, -3.0}), 2, 1);
  CHECK(j.Hpp.isApprox(Mat::Identity(2, 2)));
  CHECK(j.Hpr.norm() == 0.0);
  CHECK(j.Hrr.norm() == 0.0);
  const SWFields f = extract_fields(j);
  CHECK(f.gamma_inv.isApprox(Mat::Identity(2, 2)));
  CHECK(f.A.norm() == 0.0);
  CHECK(f.chi_inv.norm() == 0.0);
  CHECK(f.chi_degenerate);
}

TEST_CASE("jet preconditions") {
  const ScalarField tilted = ScalarField::from_polynomial(Polynomial(3, {{{1, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}}));
  CHECK_THROWS_AS(vertical_jet(tilted, vec({0.0}), 1, 1), DifferentialNotVanishing);
  CHECK_THROWS_AS(extract_fields(make_jet(mat1(0.0), mat1(1.0), mat1(1.0))), BaseBlockSingular);
}

TEST_CASE("Wong and Einstein-Mayer Hamiltonians") {
  const LieAlgebra u1 = build_algebra("u1");
  QuadraticGaugeFields free;
  free.m = 1;
  free.n = 1;
  free.gamma_inv = PolyMatrix::constant(mat1(1.0), 1);
  free.A = PolyMatrix(1, 1, 1);
  free.chi_inv = PolyMatrix(1, 1, 1);
  const Vec z = vec({0.3, 1.7, -0.4});
  CHECK(wong_hamiltonian(free, u1)(z) == doctest::Approx(0.5 * 1.7 * 1.7));

  QuadraticGaugeFields ex = free;
  ex.gamma_inv = PolyMatrix::constant(mat1(2.0), 1);
  ex.A = PolyMatrix::constant(mat1(3.0), 1);
  ex.chi_inv = PolyMatrix::constant(mat1(5.0), 1);
  const double p = z[1], r = z[2];
  CHECK(wong_hamiltonian(ex, u1)(z) == doctest::Approx(0.5 * 2.0 * (p + 3 * r) * (p + 3 * r)));
  CHECK(einstein_mayer_hamiltonian(ex, u1)(z) ==
        doctest::Approx((p + 3 * r) * (p + 3 * r) + 2.5 * r * r));
  CHECK(einstein_mayer_polynomial(free)(z) == wong_polynomial(free)(z));

  const QuadraticGaugeFields L = landau(5.0);
  const Vec w = vec({0.6, -0.2, 0.3, 0.9, 1.5});
  const Vec pi = vec({w[2] - 2.5 * w[1] * w[4], w[3] + 2.5 * w[0] * w[4]});
  CHECK(wong_hamiltonian(L, u1)(w) == doctest::Approx(0.5 * pi.squaredNorm()));

  // Callable forms from jets agree with the polynomial forms.
  const ScalarField Hfull = ScalarField::from_polynomial(worked_example());
  const JetFieldFn jets = [&](const Vec& x) { return vertical_jet(Hfull, x, 1, 1); };
  CHECK(einstein_mayer_hamiltonian(jets, 1, 1)(z) == doctest::Approx(worked_example()(z)));
  const SWFieldFn fields = [&](const Vec& x) { return extract_fields(jets(x)); };
  CHECK(wong_hamiltonian(fields, 1, 1)(z) == doctest::Approx(0.5 * 2.0 * (p + 3 * r) * (p + 3 * r)));
  CHECK(schur_split_residual(jets, 1, 1, {z, vec({1, 2, 3})}) <= 1e-12);

  const VerticalJet id = make_jet(Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Identity(2, 2));
  const JetFieldFn idj = [&](const Vec&) { return id; };
  const Vec q = vec({0.1, 0.2, 1.0, 2.0, 3.0, 4.0});
  CHECK(einstein_mayer_hamiltonian(idj, 2, 2)(q) == doctest::Approx(0.5 * (1 + 4 + 9 + 16)));
}

TEST_CASE("constraint-reduced jets") {
  Mat pr(1, 2), rr(2, 2);
  pr << 1, 2;
  rr << 4, 0, 0, 9;
  const VerticalJet j = make_jet(mat1(2.0), pr, rr);
  const VerticalJet same = reduce_jet(j, {});
  CHECK(same.Hrr == j.Hrr);
  CHECK(same.Hpr == j.Hpr);
  const VerticalJet r = reduce_jet(j, {1});
  CHECK(r.n == 1);
  CHECK(r.Hrr == mat1(4.0));
  CHECK(r.Hpr == mat1(1.0));
  CHECK(r.Hpp == j.Hpp);
  const VerticalJet none = reduce_jet(j, {0, 1});
  CHECK(none.n == 0);
  CHECK(none.Hpp == j.Hpp);
  CHECK_THROWS_AS(reduce_jet(j, {2}), IndexOutOfRange);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const Mat M = rng.random_spd(5, 0.5);
    const VerticalJet full = make_jet(M.topLeftCorner(2, 2), M.topRightCorner(2, 3), M.bottomRightCorner(3, 3));
    const SWFields ff = extract_fields(full);
    const SWFields fr = extract_fields(reduce_jet(full, {1}));
    CHECK(fr.A.col(0) == ff.A.col(0));
    CHECK(fr.A.col(1) == ff.A.col(2));
  }
}

TEST_CASE("fields rebuild random jets") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const int m = 1 + t % 3, n = 1 + (t / 3) % 3;
    const Mat M = rng.random_spd(m + n, 0.2);
    const VerticalJet j = make_jet(M.topLeftCorner(m, m), M.topRightCorner(m, n), M.bottomRightCorner(n, n));
    CHECK(reconstruction_residual(j, extract_fields(j)) <= 1e-10);
  }
}

TEST_CASE("finite-difference vertical model") {
  // H = worked example plus fiber-cubic terms, which do not change the
  // second-order vertical coefficient.
  const Polynomial H = worked_example() + Polynomial(3, {{{1, 3, 0}, 0.7}, {{0, 1, 2}, -1.1}, {{2, 0, 2}, 0.4}});
  const ScalarField f = ScalarField::from_polynomial(H);
  const Vec x = vec({0.8});
  const JetFieldFn jets = [&](const Vec& y) { return vertical_jet(f, y, 1, 1); };
  const ScalarField em = einstein_mayer_hamiltonian(jets, 1, 1);
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const Vec v = rng.uniform_vec(2, -1, 1);
    Vec z(3);
    z << x, v;
    const double model = fd_vertical_quadratic(f, x, v);
    CHECK(std::abs(em(z) - model) <= 1e-6 * std::max(1.0, std::abs(model)));
  }
  CHECK(vertical_quadratic_part(H, 1, 1).terms().size() == 4);
}

TEST_CASE("polynomial input gives exact Einstein-Mayer gradients") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const int m = 1 + t % 3, n = 1 + (t + 1) % 3;
    QuadraticGaugeFields f;
    f.m = m;
    f.n = n;
    const Mat g = rng.random_spd(m, 1.0);
    f.gamma_inv = PolyMatrix::constant(g, m);
    for (int i = 0; i < m; ++i) f.gamma_inv(i, i) += Polynomial::variable(m, i) * 0.2;
    f.A = PolyMatrix(m, n, m);
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < n; ++a)
        f.A(i, a) = Polynomial::variable(m, (i + a) % m) * rng.uniform(-1, 1) + Polynomial::constant(m, 0.3);
    f.chi_inv = PolyMatrix::constant(rng.random_spd(n, 0.5), m);
    const Polynomial H = einstein_mayer_polynomial(f);
    const ScalarField em = einstein_mayer_hamiltonian(H, m, n);
    CHECK(em.analytic());
    for (int k = 0; k < 5; ++k) {
      const Vec z = rng.uniform_vec(2 * m + n, -0.5, 0.5);
      CHECK(em(z) == doctest::Approx(H(z)));
      CHECK((em.grad(z) - H.gradient(z)).norm() <= 1e-12 * std::max(1.0, H.gradient(z).norm()));
    }
  }
}
