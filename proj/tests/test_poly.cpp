// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "conecalc/laurent.hpp"
#include "conecalc/poly.hpp"

using namespace conecalc;

namespace {
MatPolynomial scalar_poly(std::initializer_list<Cplx> coeffs) {
  std::vector<CMatrix> c;
  for (Cplx v : coeffs) c.push_back(CMatrix::Constant(1, 1, v));
  return MatPolynomial(c);
}
}  // namespace

TEST_CASE("polynomial basics") {
  Polynomial p({2.0, -3.0, 1.0});  // z^2 - 3z + 2
  CHECK(p.eval(1.0) == Cplx(0));
  CHECK(p.eval(3.0) == Cplx(2.0));
  Polynomial t = p.translate(1.0);  // (z+1)^2 - 3(z+1) + 2 = z^2 - z
  CHECK(std::abs(t.eval(0.0)) < 1e-14);
  CHECK(std::abs(t.eval(1.0)) < 1e-14);
  CHECK(std::abs(t.eval(2.0) - 2.0) < 1e-14);

  auto roots = p.roots();
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](Cplx a, Cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] - 1.0) < 1e-12);
  CHECK(std::abs(roots[1] - 2.0) < 1e-12);
}

TEST_CASE("polynomial from roots and deflation") {
  Polynomial p = Polynomial::from_roots({1.0, Cplx(0, 1), Cplx(0, -1)}, 2.0);
  CHECK(std::abs(p.eval(1.0)) < 1e-14);
  CHECK(std::abs(p.eval(Cplx(0, 1))) < 1e-14);
  Cplx rem;
  Polynomial q = p.deflate(1.0, &rem);
  CHECK(std::abs(rem) < 1e-14);
  CHECK(std::abs(q.eval(Cplx(0, 1))) < 1e-13);
}

TEST_CASE("polyeig scalar factored polynomial") {
  auto res = polyeig(scalar_poly({2.0, -3.0, 1.0}));
  REQUIRE(res.zeros.size() == 2);
  CHECK(std::abs(res.zeros[0].location - 1.0) < 1e-10);
  CHECK(res.zeros[0].multiplicity == 1);
  CHECK(std::abs(res.zeros[1].location - 2.0) < 1e-10);
  CHECK(res.zeros[1].multiplicity == 1);
}

TEST_CASE("polyeig double root z^2") {
  auto res = polyeig(scalar_poly({0.0, 0.0, 1.0}));
  REQUIRE(res.zeros.size() == 1);
  CHECK(std::abs(res.zeros[0].location) < 1e-10);
  CHECK(res.zeros[0].multiplicity == 2);
}

TEST_CASE("polyeig diag(z, z-1)") {
  CMatrix a0 = CMatrix::Zero(2, 2), a1 = CMatrix::Identity(2, 2);
  a0(1, 1) = -1.0;
  auto res = polyeig(MatPolynomial({a0, a1}));
  REQUIRE(res.zeros.size() == 2);
  CHECK(std::abs(res.zeros[0].location - 0.0) < 1e-10);
  CHECK(std::abs(res.zeros[1].location - 1.0) < 1e-10);
}

TEST_CASE("polyeig rejects identically singular degree-0 symbol") {
  CHECK_THROWS_AS(polyeig(MatPolynomial({CMatrix::Zero(2, 2)})), Error);
}

TEST_CASE("determinant and adjugate by interpolation") {
  std::mt19937_64 rng(11);
  auto rnd = [&rng]() { return Cplx(double(rng() >> 11) * 0x1.0p-53 - 0.5,
                                    double(rng() >> 11) * 0x1.0p-53 - 0.5); };
  std::vector<CMatrix> c(3, CMatrix(3, 3));
  for (auto& m : c)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = rnd();
  c[2] += CMatrix::Identity(3, 3) * 2.0;  // keep the leading block invertible
  MatPolynomial h(c);
  Polynomial det = mat_poly_det(h);
  MatPolynomial adj = mat_poly_adjugate(h);
  for (Cplx z : {Cplx(0.3, 0.2), Cplx(-1.1, 0.7), Cplx(2.4, -0.9)}) {
    CMatrix lhs = adj.eval(z) * h.eval(z);
    CMatrix rhs = det.eval(z) * CMatrix::Identity(3, 3);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("laurent series product and inverse") {
  // h(z) = z^2 - 1 around z = 1:  w(w + 2)
  MatPolynomial h = scalar_poly({-1.0, 0.0, 1.0});
  LaurentMat s = LaurentMat::from_matpoly(h, 1.0, 8);
  LaurentMat inv = s.inverse();
  CHECK(inv.lead() == -1);
  CHECK(std::abs(inv.coeff_at(-1)(0, 0) - 0.5) < 1e-13);  // residue 1/2
  LaurentMat prod = s * inv;
  CHECK(std::abs(prod.coeff_at(0)(0, 0) - 1.0) < 1e-12);
  CHECK(prod.coeff_at(1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("laurent inverse with singular leading block") {
  // diag(w, 1) + offdiagonal coupling: valuation pivoting required
  std::vector<CMatrix> c(2, CMatrix::Zero(2, 2));
  c[0] << 0.0, 1.0, 0.0, 1.0;
  c[1] << 1.0, 0.0, 0.5, 0.0;
  LaurentMat a(0, c);
  // pad window
  LaurentMat s = LaurentMat::from_matpoly(
      MatPolynomial({c[0], c[1]}), 0.0, 10);
  LaurentMat inv = s.inverse();
  // check A * A^{-1} = I through the valid window
  LaurentMat prod = s * inv;
  CHECK(std::abs(prod.coeff_at(0)(0, 0) - 1.0) < 1e-11);
  CHECK(std::abs(prod.coeff_at(0)(1, 1) - 1.0) < 1e-11);
  CHECK(prod.coeff_at(0).cwiseAbs().sum() == doctest::Approx(2.0).epsilon(1e-9));
}
