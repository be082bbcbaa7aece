#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rootfind/eigenspace.hpp"
#include "rootfind/errors.hpp"
#include "rootfind/matrix_sign.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"
#include "test_util.hpp"

using namespace rootfind;
using testutil::entrywise_rel_error;
using testutil::multiset_distance;
using testutil::with_spectrum;

namespace {

SignIterConfig tight(SignVariant v, int iters = 64) {
  SignIterConfig c;
  c.variant = v;
  c.tol = 1e-12;
  c.max_iters = iters;
  return c;
}

}  // namespace

TEST_CASE("sign_newton on a diagonal") {
  SignResult r = sign_newton(DenseMatrix::diagonal({cx(3, 0), cx(-0.5, 0)}),
                             tight(SignVariant::newton, 10));
  CHECK(r.converged);
  CHECK(r.iters <= 10);
  CHECK(entrywise_rel_error(r.sign_matrix, DenseMatrix::diagonal({cx(1, 0), cx(-1, 0)})) <= 1e-10);
}

TEST_CASE("sign_newton fails on imaginary-axis spectra") {
  DenseMatrix rot(2, 2);
  rot(0, 1) = cx(-1, 0);
  rot(1, 0) = cx(1, 0);
  SignIterConfig cfg = tight(SignVariant::newton, 40);
  CHECK_THROWS_AS(sign_newton(rot, cfg), RootfindError);  // singular or no convergence
}

TEST_CASE("sign_newton on a conjugated spectrum") {
  Rng rng(19);
  DenseMatrix a = with_spectrum({cx(2, 0), cx(-3, 0), cx(5, 0)}, rng);
  SignResult r = sign_newton(a, tight(SignVariant::newton_scaled));
  // Same similarity, signs of the eigenvalues.
  Rng rng2(19);
  DenseMatrix expect = with_spectrum({cx(1, 0), cx(-1, 0), cx(1, 0)}, rng2);
  CHECK(norms(r.sign_matrix - expect).inf <= 1e-8 * norms(expect).inf);
}

TEST_CASE("sign_pade20 inside the basin") {
  SignResult r = sign_pade20(DenseMatrix::diagonal({cx(1.2, 0), cx(-0.8, 0)}),
                             tight(SignVariant::pade20, 8));
  CHECK(r.converged);
  CHECK(r.iters <= 4);
  CHECK(entrywise_rel_error(r.sign_matrix, DenseMatrix::diagonal({cx(1, 0), cx(-1, 0)})) <= 1e-10);

  // fixed point at 1
  DenseMatrix one(1, 1);
  one(0, 0) = cx(1, 0);
  SignResult rf = sign_pade20(one, tight(SignVariant::pade20, 4));
  CHECK(std::abs(rf.sign_matrix(0, 0) - cx(1, 0)) <= 1e-14);
}

TEST_CASE("sign_pade20 diverges outside the basin") {
  DenseMatrix three(1, 1);
  three(0, 0) = cx(3, 0);
  SignIterConfig cfg = tight(SignVariant::pade20, 20);
  CHECK_THROWS_AS(sign_pade20(three, cfg), Diverged);
}

TEST_CASE("sign_real_newton fixed points and shift recovery") {
  // Eigenvalues +-i are fixed: N^2 = -I gives (N - N^{-1})/2 = N.
  DenseMatrix rot(2, 2);
  rot(0, 1) = cx(-1, 0);
  rot(1, 0) = cx(1, 0);
  SignIterConfig cfg = tight(SignVariant::real_newton, 6);
  SignResult r = sign_real_newton(rot, cfg);
  CHECK(r.converged);
  CHECK(entrywise_rel_error(r.sign_matrix, rot) <= 1e-12);

  // A real eigenvalue hits zero after one step and triggers a random shift.
  DenseMatrix one(1, 1);
  one(0, 0) = cx(1, 0);
  SignIterConfig scfg = tight(SignVariant::real_newton, 3);
  scfg.shift_range = 0.05;
  SignResult rs = sign_real_newton(one, scfg);
  CHECK(rs.singular_shift_events >= 1);
}

TEST_CASE("sign_real_newton drives the real-eigenvalue detector") {
  Polynomial p = from_roots({cx(1, 0), cx(0, 2), cx(0, -2)});
  REQUIRE(p.is_real());
  DenseMatrix c = companion_matrix(p);
  SignIterConfig cfg = tight(SignVariant::real_newton, 5);
  SignResult r = sign_real_newton(c, cfg);
  DenseMatrix w = DenseMatrix::identity(3) + r.sign_matrix * r.sign_matrix;
  DenseMatrix basis = dominant_eigenspace(w, 2, 9);
  CHECK(basis.cols() == 1);
  EigenspaceResult ce = compress(c, basis);
  REQUIRE(ce.eigenvalues.size() == 1);
  CHECK(std::abs(ce.eigenvalues[0] - cx(1, 0)) <= 1e-6);
}

TEST_CASE("sign_real_pade scalar behaviour") {
  // On the rotation (eigenvalues +-i) one step negates the matrix: a 2-cycle
  // through the target points.
  DenseMatrix rot(2, 2);
  rot(0, 1) = cx(-1, 0);
  rot(1, 0) = cx(1, 0);
  SignIterConfig cfg = tight(SignVariant::real_pade, 1);
  SignResult r = sign_real_pade(rot, cfg);
  CHECK(entrywise_rel_error(r.sign_matrix, cx(-1.0, 0.0) * rot) <= 1e-14);

  // Real scalars stay real under the odd map (three steps keeps us clear of
  // the growth-streak divergence detector, which real images do trip).
  DenseMatrix small(1, 1);
  small(0, 0) = cx(0.1, 0);
  SignIterConfig cfg3 = tight(SignVariant::real_pade, 3);
  SignResult rr = sign_real_pade(small, cfg3);
  CHECK(rr.sign_matrix(0, 0).imag() == 0.0);
  CHECK(rr.sign_matrix(0, 0).real() != 0.0);
}

TEST_CASE("real variants keep iterates exactly real") {
  Polynomial p = random_polynomial(12, 5150);
  DenseMatrix c = companion_matrix(p);
  SignIterConfig ncfg = tight(SignVariant::real_newton, 5);
  SignResult rn = sign_real_newton(c, ncfg);
  for (const auto& z : rn.sign_matrix.data()) CHECK(z.imag() == 0.0);
  SignIterConfig pcfg = tight(SignVariant::real_pade, 2);
  pcfg.norm_control = true;
  SignResult rp = sign_real_pade(rn.sign_matrix, pcfg);
  for (const auto& z : rp.sign_matrix.data()) CHECK(z.imag() == 0.0);
}

TEST_CASE("norm-control transform geometry") {
  Rng rng(23);
  // Real axis lands in [-sqrt(2)/4, sqrt(2)/4].
  for (int t = 0; t < 1000; ++t) {
    const double x = rng.uniform(-50.0, 50.0);
    const double y = x / (x * x + 2.0);
    CHECK(std::abs(y) <= std::sqrt(2.0) / 4.0 + 1e-15);
  }
  // Discs around +-i dilate but stay inside the basin for y <= 0.1.
  for (double y : {0.05, 0.1}) {
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const double phi = 6.283185307179586 * (t + 0.5) / 10000.0;
      for (double s : {1.0, -1.0}) {
        cx z = cx(0.0, s) + std::polar(y, phi);
        cx w = z / (z * z + 2.0);
        worst = std::max(worst, std::abs(w - cx(0.0, s)));
      }
    }
    CHECK(worst <= (1.0 + y) / (1.0 - 2.0 * y - y * y));
    if (y == 0.1) CHECK(worst < 0.4);
    if (y == 0.05) CHECK(worst < 0.17);
  }
}

TEST_CASE("basin_move geometry and recovery") {
  // Scalar landing: real-root images inside D_0.2(+-i).
  Polynomial p = from_roots({cx(1, 0), cx(0, 3), cx(0, -3)});
  REQUIRE(p.is_real());
  auto [plus, minus] = basin_move(p, 8);
  std::vector<cx> ev = small_eig(plus);
  int in_disc = 0, far_out = 0;
  for (cx v : ev) {
    const double basin_dist = std::min(std::abs(v - cx(0, 1)), std::abs(v + cx(0, 1)));
    if (basin_dist <= 0.2 + 1e-9) ++in_disc;
    if (basin_dist > 0.5) ++far_out;  // outside the quintic basin entirely
  }
  CHECK(in_disc == 1);
  CHECK(far_out == 2);
  CHECK(norms(minus - (plus - cx(0.0, 2.0) * DenseMatrix::identity(3))).inf <= 1e-12);

  // End to end: the quintic map contracts the in-basin image to +-i, making
  // its eigenspace dominated in I + N^2; invert and extract.
  // First quintic step runs uncontrolled: the stabilizing transform dilates
  // the +-i discs about threefold, safe only once the images sit well inside.
  DenseMatrix n = plus;
  for (int it = 0; it < 3; ++it) {
    if (it >= 1 && norms(n).inf > 10.0) {
      DenseMatrix n2 = n * n;
      add_scaled_identity(n2, cx(2.0, 0.0));
      n = lu_solve(n2, n);
    }
    DenseMatrix n2 = n * n;
    DenseMatrix n3 = n2 * n;
    DenseMatrix n5 = n2 * n3;
    DenseMatrix next(3, 3);
    for (std::size_t i = 0; i < next.data().size(); ++i)
      next.data()[i] = -0.125 * (3.0 * n5.data()[i] + 10.0 * n3.data()[i] + 15.0 * n.data()[i]);
    n = next;
  }
  DenseMatrix w = DenseMatrix::identity(3) + n * n;
  DenseMatrix basis = dominant_eigenspace(lu_invert(w), 2, 33);
  EigenspaceResult ce = compress(companion_matrix(p), basis);
  bool found1 = false;
  for (cx v : ce.eigenvalues)
    if (std::abs(v - cx(1, 0)) <= 1e-6) found1 = true;
  CHECK(found1);
}

TEST_CASE("spectral projectors and counts") {
  SignResult s;
  s.sign_matrix = DenseMatrix::diagonal({cx(1, 0), cx(-1, 0), cx(1, 0)});
  s.converged = true;
  Projectors pr = spectral_projectors(s);
  CHECK(entrywise_rel_error(pr.p_minus, DenseMatrix::diagonal({cx(0, 0), cx(2, 0), cx(0, 0)})) ==
        0.0);
  CHECK(pr.count_minus == 1);
  CHECK(pr.count_plus == 2);
  CHECK(pr.count_axis == 0);

  Rng rng(29);
  DenseMatrix a = with_spectrum({cx(-2, 0), cx(3, 0), cx(7, 0)}, rng);
  SignResult sr = sign_newton(a, tight(SignVariant::newton_scaled));
  Projectors pa = spectral_projectors(sr);
  CHECK(pa.count_minus == 1);
  CHECK(pa.count_plus == 2);
  CHECK(pa.count_minus + pa.count_plus == 3);
}

TEST_CASE("sign involution and commutation on constructed spectra") {
  Rng rng(31);
  for (int t = 0; t < 6; ++t) {
    std::vector<cx> spec;
    const int n = 4 + static_cast<int>(rng.next_u64() % 5);
    for (int i = 0; i < n; ++i) {
      double re = rng.uniform(0.5, 3.0) * (rng.uniform01() < 0.5 ? -1.0 : 1.0);
      spec.push_back(cx(re, rng.uniform(-2.0, 2.0)));
    }
    DenseMatrix a = with_spectrum(spec, rng);
    SignIterConfig cfg = tight(SignVariant::newton_scaled);
    SignResult r = sign_newton(a, cfg);
    DenseMatrix s2 = r.sign_matrix * r.sign_matrix;
    CHECK(norms(s2 - DenseMatrix::identity(n)).inf <= 100.0 * cfg.tol * 1e4);
    DenseMatrix comm = a * r.sign_matrix - r.sign_matrix * a;
    CHECK(norms(comm).inf <= 1e-6 * norms(a).inf * norms(r.sign_matrix).inf);
  }
}

TEST_CASE("count_in_halfplane") {
  Polynomial p = from_roots({cx(1, 0), cx(2, 0), cx(-3, 0)});
  SignIterConfig cfg = tight(SignVariant::newton_scaled);
  auto [left, right] = count_in_halfplane(p, cx(1, 0), cx(0, 0), cfg);
  CHECK(left == 1);
  CHECK(right == 2);

  // A rotated test line separates +-i.
  Polynomial q(std::vector<double>{1.0, 0.0, 1.0});
  auto [l2, r2] = count_in_halfplane(q, cx(0, 1), cx(0, 0), cfg);
  CHECK(l2 == 1);
  CHECK(r2 == 1);

  // A line beyond all the roots leaves everything on one side.
  auto [l3, r3] = count_in_halfplane(p, cx(1, 0), cx(10, 0), cfg);
  CHECK(l3 == 3);
  CHECK(r3 == 0);
}

TEST_CASE("quadtree isolation") {
  SignIterConfig cfg = tight(SignVariant::newton_scaled);

  Polynomial p(std::vector<double>{-1.0, 0.0, 1.0});  // roots +-1
  auto leaves = quadtree_isolate(p, Box{cx(0.003, 0.004), 2.1}, 1, 1e-4, cfg);
  REQUIRE(leaves.size() == 2);
  for (const BoxCount& leaf : leaves) {
    CHECK(leaf.count == 1);
    bool holds_plus = std::abs(cx(1, 0) - leaf.box.center) <= leaf.box.half_width * 1.42;
    bool holds_minus = std::abs(cx(-1, 0) - leaf.box.center) <= leaf.box.half_width * 1.42;
    CHECK((holds_plus || holds_minus));
  }

  Polynomial q = from_roots({cx(0, 1), cx(0, -1), cx(3, 0)});
  auto leaves2 = quadtree_isolate(q, Box{cx(0.13, 0.07), 4.0}, 1, 1e-4, cfg);
  REQUIRE(leaves2.size() == 3);
  int total = 0;
  for (const BoxCount& leaf : leaves2) total += leaf.count;
  CHECK(total == 3);

  // A far-away box holds nothing and is not subdivided.
  auto empty = quadtree_isolate(p, Box{cx(50.0, 50.0), 1.0}, 1, 1e-4, cfg);
  CHECK(empty.empty());
}

TEST_CASE("scalar newton envelope (fixed-gamma bound)") {
  Rng rng(37);
  int checked = 0;
  while (checked < 100) {
    cx l0(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
    if (std::abs(l0) > 10.0 || std::abs(l0.real()) < 0.1) continue;
    ++checked;
    const double delta = l0.real() > 0.0 ? 1.0 : -1.0;
    const double gamma = std::abs((l0 - delta) / (l0 + delta));
    std::vector<double> err = scalar_convergence_check(l0, ScalarSignVariant::newton, 6);
    for (int i = 0; i <= 6; ++i) {
      const double g2i = std::pow(gamma, std::pow(2.0, i));
      CHECK(err[static_cast<std::size_t>(i)] <= 2.0 * g2i / (1.0 - g2i) + 1e-12);
    }
  }
}

TEST_CASE("scalar newton keeps the imaginary axis invariant") {
  cx l(0.0, 0.7);
  for (int i = 0; i < 8; ++i) {
    l = 0.5 * (l + 1.0 / l);
    CHECK(l.real() == 0.0);
  }
}

TEST_CASE("scalar pade stepwise cubic bound and derived envelope") {
  Rng rng(41);
  const double k_factor = 113.0 / 32.0;
  int checked = 0;
  while (checked < 100) {
    const double delta = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    const double r = 0.45 * std::sqrt(rng.uniform01());
    const double phi = rng.uniform(0.0, 6.283185307179586);
    cx l0 = cx(delta, 0.0) + std::polar(r, phi);
    ++checked;
    std::vector<double> err = scalar_convergence_check(l0, ScalarSignVariant::pade, 4);
    for (int i = 0; i + 1 <= 4; ++i) {
      CHECK(err[static_cast<std::size_t>(i + 1)] <=
            k_factor * std::pow(err[static_cast<std::size_t>(i)], 3.0) + 1e-12);
    }
    // contraction envelope in the scaled variable sqrt(113/32) gamma
    const double v0 = std::sqrt(k_factor) * err[0];
    for (int i = 1; i <= 4; ++i) {
      const double bound = std::pow(v0, std::pow(3.0, i)) / std::sqrt(k_factor);
      CHECK(err[static_cast<std::size_t>(i)] <= bound + 1e-12);
    }
  }
}
