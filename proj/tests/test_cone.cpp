// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conecalc/fuchs.hpp"

using namespace conecalc;

namespace {

// r^{-mu} sum_j (sum_i a[j][i] r^i) D^j with scalar coefficients.
FuchsOperator scalar_fuchs(int mu, const std::vector<std::vector<Cplx>>& a) {
  std::vector<std::vector<CMatrix>> taylor(mu + 1);
  for (int j = 0; j <= mu; ++j)
    for (Cplx v : (j < static_cast<int>(a.size()) ? a[j] : std::vector<Cplx>{}))
      taylor[j].push_back(CMatrix::Constant(1, 1, v));
  return FuchsOperator(mu, point_model(), std::move(taylor));
}

FuchsOperator cone_laplacian_s1(int max_mode) {
  SpectralModel model = s1_model(max_mode);
  const int K = model.K;
  CMatrix modes = CMatrix::Zero(K, K);
  for (int k = -max_mode; k <= max_mode; ++k) {
    double kk = k;
    modes(k + max_mode, k + max_mode) = -kk * kk;
  }
  std::vector<std::vector<CMatrix>> taylor(3);
  taylor[0] = {modes};
  taylor[1] = {CMatrix::Zero(K, K)};
  taylor[2] = {CMatrix::Identity(K, K)};
  FuchsOperator op(2, std::move(model), std::move(taylor));
  op.sigma0_form = "laplacian";
  return op;
}

FuchsOperator random_fuchs(int K, int mu, int imax, std::mt19937_64& rng) {
  auto rnd = [&rng]() {
    return Cplx(double(rng() >> 11) * 0x1.0p-53 - 0.5, double(rng() >> 11) * 0x1.0p-53 - 0.5);
  };
  SpectralModel model;
  model.name = "user";
  model.n = 1;
  model.K = K;
  if (K == 1) model = point_model();
  std::vector<std::vector<CMatrix>> taylor(mu + 1);
  for (int j = 0; j <= mu; ++j)
    for (int i = 0; i <= imax; ++i) {
      CMatrix m(K, K);
      for (int r = 0; r < K; ++r)
        for (int c = 0; c < K; ++c) m(r, c) = rnd();
      taylor[j].push_back(m);
    }
  return FuchsOperator(mu, std::move(model), std::move(taylor));
}

void check_hierarchies_match(const ConormalHierarchy& x, const ConormalHierarchy& y, int depth,
                             double tol) {
  REQUIRE(x.size() == y.size());
  for (int l = 0; l <= depth; ++l) {
    const MatPolynomial& p = x.level(l).poly;
    const MatPolynomial& q = y.level(l).poly;
    double scale = std::max({1.0, p.coeff_norm(), q.coeff_norm()});
    MatPolynomial diff = p - q;
    CHECK(diff.coeff_norm() < tol * scale);
  }
}

}  // namespace

TEST_CASE("conormal hierarchy of the cone Laplacian on S1") {
  FuchsOperator lap = cone_laplacian_s1(3);
  ConormalHierarchy h = conormal_hierarchy(lap, 3);
  const MatPolynomial& h0 = h.level(0).poly;
  // h0 = diag(z^2 - k^2)
  for (int k = -3; k <= 3; ++k) {
    int idx = k + 3;
    Cplx v = h0.eval(Cplx(2.0, 0.5))(idx, idx);
    Cplx expect = Cplx(2.0, 0.5) * Cplx(2.0, 0.5) - double(k * k);
    CHECK(std::abs(v - expect) < 1e-13);
  }
  for (int l = 1; l <= 3; ++l) CHECK(h.level(l).poly.is_zero());
}

TEST_CASE("conormal hierarchy Taylor read-off: r^{-1}(a0 + a1 r)(-r d/dr)") {
  FuchsOperator a = scalar_fuchs(1, {{}, {2.0, 3.0}});  // a_1(r) = 2 + 3r
  ConormalHierarchy h = conormal_hierarchy(a, 2);
  CHECK(std::abs(h.level(0).poly.eval(1.5)(0, 0) - 3.0) < 1e-14);   // 2z at z=1.5
  CHECK(std::abs(h.level(1).poly.eval(1.5)(0, 0) - 4.5) < 1e-14);   // 3z
  CHECK(h.level(2).poly.is_zero());
}

TEST_CASE("conormal hierarchy of the identity") {
  FuchsOperator id = scalar_fuchs(0, {{1.0}});
  ConormalHierarchy h = conormal_hierarchy(id, 2);
  CHECK(std::abs(h.level(0).poly.eval(0.3)(0, 0) - 1.0) < 1e-15);
  CHECK(h.level(1).poly.is_zero());
}

TEST_CASE("translation product: (r^{-1} D) o (r^{-1} D) gives (z+1)z") {
  FuchsOperator d = scalar_fuchs(1, {{}, {1.0}});
  ConormalHierarchy h = conormal_hierarchy(d, 2);
  ConormalHierarchy prod = translation_product(h, h, 2);
  CHECK(prod.mu() == 2);
  for (Cplx z : {Cplx(0.7, 0.0), Cplx(-1.3, 2.0)})
    CHECK(std::abs(prod.level(0).poly.eval(z)(0, 0) - (z + 1.0) * z) < 1e-13);
  CHECK(prod.level(1).poly.is_zero());
}

TEST_CASE("translation product with the identity hierarchy") {
  std::mt19937_64 rng(3);
  FuchsOperator a = random_fuchs(2, 2, 2, rng);
  ConormalHierarchy ha = conormal_hierarchy(a, 3);
  ConormalHierarchy id = ConormalHierarchy::identity(2, 3);
  check_hierarchies_match(translation_product(ha, id, 3), ha, 3, 1e-14);
  check_hierarchies_match(translation_product(id, ha, 3), ha, 3, 1e-14);
}

TEST_CASE("direct_compose: (r^{-1} D) o (r^{-1} D) = r^{-2}(D^2 + D)") {
  FuchsOperator d = scalar_fuchs(1, {{}, {1.0}});
  ComposeResult res = direct_compose(d, d);
  CHECK(res.op.mu() == 2);
  CHECK(!res.truncated);
  CHECK(std::abs(res.op.coeff(2, 0)(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(res.op.coeff(1, 0)(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(res.op.coeff(0, 0)(0, 0)) < 1e-14);
}

TEST_CASE("direct_compose with identity returns the operator") {
  std::mt19937_64 rng(5);
  FuchsOperator a = random_fuchs(3, 2, 1, rng);
  FuchsOperator id(0, a.model(), {{CMatrix::Identity(3, 3)}});
  ComposeResult res = direct_compose(a, id);
  for (int j = 0; j <= 2; ++j)
    for (int i = 0; i <= 1; ++i)
      CHECK((res.op.coeff(j, i) - a.coeff(j, i)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("oracle equivalence: translation_product vs conormal_hierarchy(direct_compose)") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 20; ++trial) {
    int K = 1 + int(rng() % 4);
    int mu = int(rng() % 4), nu = int(rng() % 4);
    int ia = int(rng() % 4), ib = int(rng() % 4);
    FuchsOperator a = random_fuchs(K, mu, ia, rng);
    FuchsOperator b = random_fuchs(K, nu, ib, rng);
    int depth = ia + ib;
    ConormalHierarchy lhs =
        translation_product(conormal_hierarchy(a, depth), conormal_hierarchy(b, depth), depth);
    ConormalHierarchy rhs = conormal_hierarchy(direct_compose(a, b).op, depth);
    check_hierarchies_match(lhs, rhs, depth, 1e-12);
  }
}

TEST_CASE("translation product associativity") {
  std::mt19937_64 rng(7);
  FuchsOperator a = random_fuchs(2, 2, 2, rng);
  FuchsOperator b = random_fuchs(2, 1, 2, rng);
  FuchsOperator c = random_fuchs(2, 2, 2, rng);
  int depth = 4;
  ConormalHierarchy ha = conormal_hierarchy(a, depth), hb = conormal_hierarchy(b, depth),
                    hc = conormal_hierarchy(c, depth);
  ConormalHierarchy left = translation_product(translation_product(ha, hb, depth), hc, depth);
  ConormalHierarchy right = translation_product(ha, translation_product(hb, hc, depth), depth);
  check_hierarchies_match(left, right, depth, 1e-12);
}

TEST_CASE("conormal ellipticity: h0 = z^2 - 1/4 against weight lines") {
  FuchsOperator a = scalar_fuchs(2, {{-0.25}, {}, {1.0}});
  ConormalHierarchy h = conormal_hierarchy(a, 0);
  auto rep0 = check_conormal_ellipticity(h, 0.0, 0);  // line Re z = 1/2, zero on it
  CHECK(!rep0.elliptic);
  auto rep3 = check_conormal_ellipticity(h, 0.3, 0);  // line Re z = 0.2
  CHECK(rep3.elliptic);
  CHECK(rep3.min_distance == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("conormal ellipticity of the cone Laplacian at gamma = 1/2") {
  FuchsOperator lap = cone_laplacian_s1(4);
  ConormalHierarchy h = conormal_hierarchy(lap, 0);
  auto rep = check_conormal_ellipticity(h, 0.5, 1);  // line Re z = 0.5, zeros at integers
  CHECK(rep.elliptic);
  CHECK(rep.min_distance == doctest::Approx(0.5).epsilon(1e-8));
  auto bad = check_conormal_ellipticity(h, 1.0, 1);  // line Re z = 0 hits k = 0
  CHECK(!bad.elliptic);
}

TEST_CASE("ellipticity verdict invariant under nonzero scalar scaling of h0") {
  FuchsOperator a = scalar_fuchs(2, {{-0.25}, {}, {1.0}});
  ConormalHierarchy h = conormal_hierarchy(a, 0);
  FuchsOperator b = scalar_fuchs(2, {{Cplx(0, -0.75)}, {}, {Cplx(0, 3.0)}});  // 3i * h0
  ConormalHierarchy h2 = conormal_hierarchy(b, 0);
  for (double gamma : {0.0, 0.3, -0.6, 1.2})
    CHECK(check_conormal_ellipticity(h, gamma, 0).elliptic ==
          check_conormal_ellipticity(h2, gamma, 0).elliptic);
}

TEST_CASE("weight_shift_commute legality and fallback") {
  FactoredPoly den;
  den.factors = {{Cplx(0), 1}};
  MeroMatrix f = MeroMatrix::from_rational(
      MatPolynomial::constant(CMatrix::Identity(1, 1)), den);  // pole at 0
  auto legal = weight_shift_commute(f, 0.0, 0, 1.0);           // target line Re z = -1/2
  CHECK(legal.legal);
  CHECK(std::abs(legal.shifted.poles()[0].location - 1.0) < 1e-12);  // T^{-1}: pole moves to +1

  FactoredPoly den2;
  den2.factors = {{Cplx(-0.5), 1}};
  MeroMatrix g = MeroMatrix::from_rational(
      MatPolynomial::constant(CMatrix::Identity(1, 1)), den2);  // pole on target line
  auto illegal = weight_shift_commute(g, 0.0, 0, 1.0);
  CHECK(!illegal.legal);
  CHECK(illegal.epsilon_used == doctest::Approx(0.25));

  auto noop = weight_shift_commute(g, 0.0, 0, 0.0);  // beta = 0 always legal
  CHECK(noop.legal);
  CHECK(noop.epsilon_used == 0);

  FactoredPoly den3;
  den3.factors = {{Cplx(0.3), 1}};  // pole on the beta = 0.2 target line Re z = 0.3
  MeroMatrix w = MeroMatrix::from_rational(
      MatPolynomial::constant(CMatrix::Identity(1, 1)), den3);
  CHECK_THROWS_AS(weight_shift_commute(w, 0.0, 0, 0.2, 0.5), Error);  // epsilon >= beta
}

TEST_CASE("sigma0 ellipticity checks") {
  FuchsOperator lap = cone_laplacian_s1(2);
  auto rep = check_sigma0_ellipticity(lap);
  CHECK(rep.status == Sigma0Status::elliptic);
  CHECK(rep.min_modulus == doctest::Approx(1.0));

  FuchsOperator zero = scalar_fuchs(2, {{}, {}, {}});
  CHECK(check_sigma0_ellipticity(zero).status == Sigma0Status::not_elliptic);

  FuchsOperator euler_degenerate = scalar_fuchs(2, {{1.0}, {1.0}, {0.0}});  // a_2 = 0
  CHECK(check_sigma0_ellipticity(euler_degenerate).status == Sigma0Status::not_elliptic);
}

TEST_CASE("smoothing Mellin part validates its weight lines") {
  FactoredPoly den;
  den.factors = {{Cplx(0.5), 1}};  // pole at Re z = 1/2
  MeroMatrix f = MeroMatrix::from_rational(MatPolynomial::constant(CMatrix::Identity(1, 1)), den);
  // gamma_0 = 0, n = 0: line Re z = 1/2 hits the pole
  CHECK_THROWS_AS(SmoothingMellinPart({{0, 0.0, f}}, 0.0, 0), Error);
  // gamma_0 = 0.25: line Re z = 0.25, fine
  SmoothingMellinPart ok({{0, 0.25, f}}, 0.25, 0);
  CHECK(ok.terms().size() == 1);
}
