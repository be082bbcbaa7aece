#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rootfind/errors.hpp"
#include "rootfind/frobenius.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"
#include "rootfind/spectral_maps.hpp"
#include "test_util.hpp"

using namespace rootfind;
using testutil::entrywise_rel_error;
using testutil::multiset_distance;

namespace {

Polynomial P(std::vector<double> c) { return Polynomial(c); }

FrobeniusElement random_element(const AlgebraPtr& alg, Rng& rng) {
  std::vector<cx> c(static_cast<std::size_t>(alg->n()));
  for (auto& z : c) z = rng.gaussian_complex();
  return FrobeniusElement(alg, Polynomial(std::move(c)));
}

}  // namespace

TEST_CASE("from_poly reduces modulo the defining polynomial") {
  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));  // x^2 + 1
  FrobeniusElement sq = from_poly(P({0.0, 0.0, 1.0}), ip);
  CHECK(sq.residue().degree() == 0);
  CHECK(std::abs(sq.residue().coeff(0) - cx(-1.0, 0.0)) < 1e-14);

  FrobeniusElement x = element_x(ip);
  CHECK(x.residue().degree() == 1);
  CHECK(std::abs(x.residue().coeff(1) - cx(1.0, 0.0)) < 1e-15);

  AlgebraPtr c3 = make_algebra(P({-1.0, 0.0, 0.0, 1.0}));  // x^3 - 1
  FrobeniusElement x5 = from_poly(P({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}), c3);
  CHECK(x5.residue().degree() == 2);
  CHECK(std::abs(x5.residue().coeff(2) - cx(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(x5.residue().coeff(0)) <= 1e-12);
  CHECK(std::abs(x5.residue().coeff(1)) <= 1e-12);
}

TEST_CASE("to_dense matches the companion structure") {
  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));
  DenseMatrix cx_dense = to_dense(element_x(ip));
  CHECK(std::abs(cx_dense(0, 0)) == 0.0);
  CHECK(std::abs(cx_dense(0, 1) - cx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(cx_dense(1, 0) - cx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(cx_dense(1, 1)) == 0.0);

  CHECK(entrywise_rel_error(to_dense(element_one(ip)), DenseMatrix::identity(2)) == 0.0);

  FrobeniusElement sq = mul(element_x(ip), element_x(ip));
  CHECK(entrywise_rel_error(to_dense(sq), cx(-1.0, 0.0) * DenseMatrix::identity(2)) < 1e-14);
}

TEST_CASE("to_dense columns equal apply_to_vector on unit vectors") {
  Rng rng(5);
  AlgebraPtr alg = make_algebra(random_polynomial(9, 44));
  FrobeniusElement a = random_element(alg, rng);
  DenseMatrix d = to_dense(a);
  for (int j = 0; j < 9; ++j) {
    std::vector<cx> e(9, cx(0.0, 0.0));
    e[static_cast<std::size_t>(j)] = cx(1.0, 0.0);
    std::vector<cx> col = apply_to_vector(a, e);
    for (int i = 0; i < 9; ++i)
      CHECK(std::abs(col[static_cast<std::size_t>(i)] - d(i, j)) <= 1e-12 * (1.0 + std::abs(d(i, j))));
  }
}

TEST_CASE("mul against the dense oracle") {
  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));
  FrobeniusElement xx = mul(element_x(ip), element_x(ip));
  CHECK(std::abs(xx.residue().coeff(0) - cx(-1.0, 0.0)) < 1e-14);

  Rng rng(7);
  AlgebraPtr alg = make_algebra(testutil::well_scaled_random_polynomial(32, 123));
  for (int t = 0; t < 6; ++t) {
    FrobeniusElement a = random_element(alg, rng);
    FrobeniusElement b = random_element(alg, rng);
    DenseMatrix structured = to_dense(mul(a, b));
    DenseMatrix dense = to_dense(a) * to_dense(b);
    CHECK(entrywise_rel_error(structured, dense) <= 1e-10);
    CHECK(entrywise_rel_error(to_dense(mul(a, element_one(alg))), to_dense(a)) <= 1e-14);
  }
}

TEST_CASE("mul requires a shared modulus") {
  AlgebraPtr a1 = make_algebra(P({1.0, 0.0, 1.0}));
  AlgebraPtr a2 = make_algebra(P({-1.0, 0.0, 1.0}));
  CHECK_THROWS_AS(mul(element_x(a1), element_x(a2)), ModulusMismatch);
}

TEST_CASE("ring axioms hold against dense oracles") {
  Rng rng(11);
  AlgebraPtr alg = make_algebra(testutil::well_scaled_random_polynomial(24, 321));
  for (int t = 0; t < 4; ++t) {
    FrobeniusElement a = random_element(alg, rng);
    FrobeniusElement b = random_element(alg, rng);
    FrobeniusElement c = random_element(alg, rng);
    CHECK(entrywise_rel_error(to_dense(mul(mul(a, b), c)), to_dense(mul(a, mul(b, c)))) <= 1e-10);
    CHECK(entrywise_rel_error(to_dense(mul(a, add(b, c))),
                              to_dense(add(mul(a, b), mul(a, c)))) <= 1e-10);
  }
}

TEST_CASE("invert basics") {
  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));
  FrobeniusElement inv = invert(element_x(ip));
  CHECK(std::abs(inv.residue().coeff(1) - cx(-1.0, 0.0)) <= 1e-14);
  CHECK(std::abs(inv.residue().coeff(0)) <= 1e-14);

  AlgebraPtr pm = make_algebra(P({-1.0, 0.0, 1.0}));  // x^2 - 1
  FrobeniusElement xm1(pm, P({-1.0, 1.0}));           // x - 1 vanishes at the root 1
  CHECK_THROWS_AS(invert(xm1), SingularElement);
}

TEST_CASE("invert against the dense LU oracle") {
  Rng rng(13);
  AlgebraPtr alg = make_algebra(testutil::well_scaled_random_polynomial(16, 777));
  for (int t = 0; t < 6; ++t) {
    FrobeniusElement a = random_element(alg, rng);
    FrobeniusElement ainv = invert(a);
    CHECK(entrywise_rel_error(to_dense(ainv), lu_invert(to_dense(a))) <= 1e-8);
    CHECK(entrywise_rel_error(to_dense(invert(ainv)), to_dense(a)) <= 1e-8);
    CHECK(entrywise_rel_error(to_dense(mul(a, ainv)), DenseMatrix::identity(16)) <= 1e-8);
  }
}

TEST_CASE("power_squaring") {
  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));
  PowerResult p1 = power_squaring(element_x(ip), 1, false);
  CHECK(std::abs(p1.value.residue().coeff(0) - cx(-1.0, 0.0)) < 1e-14);

  AlgebraPtr pm = make_algebra(P({-1.0, 0.0, 1.0}));
  PowerResult p10 = power_squaring(element_x(pm), 10, false);
  CHECK(p10.value.residue().degree() == 0);
  CHECK(std::abs(p10.value.residue().coeff(0) - cx(1.0, 0.0)) <= 1e-12);

  Rng rng(17);
  AlgebraPtr alg = make_algebra(testutil::well_scaled_random_polynomial(16, 888));
  FrobeniusElement a = random_element(alg, rng);
  PowerResult scaled = power_squaring(a, 3, true);
  DenseMatrix dense_pow8 = dense_pow(to_dense(a), 8);
  const double unscale = std::exp(-power_unscale_log(scaled));
  DenseMatrix structured = to_dense(scaled.value);
  for (auto& z : structured.data()) z *= unscale;
  CHECK(entrywise_rel_error(structured, dense_pow8) <= 1e-8);
}

TEST_CASE("cayley maps real spectra onto the unit circle") {
  AlgebraPtr pm = make_algebra(P({-1.0, 0.0, 1.0}));  // roots +-1
  FrobeniusElement c = cayley(pm, 1.0, 0.0);
  std::vector<cx> images = small_eig(to_dense(c));
  CHECK(multiset_distance(images, {cx(0.0, 1.0), cx(0.0, -1.0)}) <= 1e-10);
  for (cx mu : images) CHECK(std::abs(std::abs(mu) - 1.0) <= 1e-12);

  AlgebraPtr ip = make_algebra(P({1.0, 0.0, 1.0}));  // roots +-i hit the poles
  CHECK_THROWS_AS(cayley(ip, 1.0, 0.0), SingularElement);
}

TEST_CASE("cayley separates real from decidedly nonreal roots") {
  // Real roots map to |mu| = 1; roots with |Im| >= 0.1 leave the circle.
  std::vector<cx> roots{cx(0.3, 0.0), cx(-1.2, 0.0), cx(0.4, 0.6), cx(0.4, -0.6),
                        cx(-0.7, 0.15), cx(-0.7, -0.15)};
  Polynomial p = from_roots(roots);
  REQUIRE(p.is_real());
  AlgebraPtr alg = make_algebra(p);
  FrobeniusElement c = cayley(alg, 1.0, 0.0);
  for (cx mu : small_eig(to_dense(c))) {
    const double off = std::abs(std::abs(mu) - 1.0);
    CHECK((off <= 1e-9 || off >= 1e-3));
  }
  int on_circle = 0;
  for (cx mu : small_eig(to_dense(c)))
    if (std::abs(std::abs(mu) - 1.0) <= 1e-9) ++on_circle;
  CHECK(on_circle == 2);
}

TEST_CASE("apply_to_vector") {
  AlgebraPtr alg = make_algebra(random_polynomial(8, 99));
  std::vector<cx> v(8, cx(0.0, 0.0));
  v[0] = cx(1.0, 0.0);
  std::vector<cx> shifted = apply_to_vector(element_x(alg), v);
  CHECK(std::abs(shifted[1] - cx(1.0, 0.0)) <= 1e-14);

  Rng rng(23);
  FrobeniusElement one = element_one(alg);
  std::vector<cx> w(8);
  for (auto& z : w) z = rng.gaussian_complex();
  std::vector<cx> w2 = apply_to_vector(one, w);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(w2[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(i)]) <= 1e-14);

  AlgebraPtr big = make_algebra(testutil::well_scaled_random_polynomial(32, 100));
  FrobeniusElement a = random_element(big, rng);
  std::vector<cx> u(32);
  for (auto& z : u) z = rng.gaussian_complex();
  std::vector<cx> got = apply_to_vector(a, u);
  std::vector<cx> want = matvec(to_dense(a), u);
  for (int i = 0; i < 32; ++i)
    CHECK(std::abs(got[static_cast<std::size_t>(i)] - want[static_cast<std::size_t>(i)]) <=
          1e-10 * (1.0 + std::abs(want[static_cast<std::size_t>(i)])));

  CHECK_THROWS_AS(apply_to_vector(a, w), DimensionMismatch);
}

TEST_CASE("spectral mapping: element eigenvalues are residue images of roots") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cx> roots;
    const int deg = 4 + static_cast<int>(rng.next_u64() % 5);  // <= 8
    for (int i = 0; i < deg / 2; ++i) {
      cx r(rng.uniform(-1.5, 1.5), rng.uniform(0.1, 1.5));
      roots.push_back(r);
      roots.push_back(std::conj(r));
    }
    if (deg % 2 == 1) roots.push_back(cx(rng.uniform(-1.5, 1.5), 0.0));
    Polynomial p = from_roots(roots);
    AlgebraPtr alg = make_algebra(p);
    FrobeniusElement a = random_element(alg, rng);
    std::vector<cx> expected;
    for (cx r : roots) expected.push_back(evaluate(a.residue(), r));
    CHECK(multiset_distance(small_eig(to_dense(a)), expected) <= 1e-8);
  }
}
