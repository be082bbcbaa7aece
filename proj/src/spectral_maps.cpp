#include "rootfind/spectral_maps.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind/errors.hpp"

namespace rootfind {

std::pair<double, double> trace_shift(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("trace_shift: not square");
  const int n = m.rows();
  const double t = -trace(m).real();
  double a = t / static_cast<double>(n);
  if (std::abs(t) < 1e-12 * static_cast<double>(n)) a = 1.0;
  return {a, t};
}

FrobeniusElement mk_map(const FrobeniusElement& p_power) {
  const cx i_unit(0.0, 1.0);
  FrobeniusElement num = add_scalar(p_power, cx(1.0, 0.0));
  FrobeniusElement den = add_scalar(p_power, cx(-1.0, 0.0));
  return scale(mul(num, invert(den)), i_unit);
}

DenseMatrix mk_map(const DenseMatrix& p_power) {
  DenseMatrix num = p_power;
  add_scaled_identity(num, cx(1.0, 0.0));
  DenseMatrix den = p_power;
  add_scaled_identity(den, cx(-1.0, 0.0));
  return cx(0.0, 1.0) * (num * lu_invert(den));
}

DenseMatrix qk_map(const DenseMatrix& m_k) {
  DenseMatrix q = m_k * m_k;
  add_scaled_identity(q, cx(1.0, 0.0));
  return q;
}

FrobeniusElement element_pow(const FrobeniusElement& a, int k) {
  if (k < 0) return invert(element_pow(a, -k));
  FrobeniusElement result = element_one(a.algebra());
  FrobeniusElement base = a;
  int e = k;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

DenseMatrix dense_pow(const DenseMatrix& a, int k) {
  if (k < 0) return lu_invert(dense_pow(a, -k));
  DenseMatrix result = DenseMatrix::identity(a.rows());
  DenseMatrix base = a;
  int e = k;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

FrobeniusElement tk_map(const FrobeniusElement& p, int k) {
  FrobeniusElement pk = element_pow(p, k);
  return add(pk, invert(pk));
}

DenseMatrix tk_map(const DenseMatrix& p, int k) {
  DenseMatrix pk = dense_pow(p, k);
  return pk + lu_invert(pk);
}

namespace {

struct ShiftedCayley {
  FrobeniusElement element;
  double a;
  double t;
};

// Cayley map of a(C_p + tI); a singular hit (a root maps to +-i exactly) is
// dodged by nudging the scale.
ShiftedCayley build_cayley(const Polynomial& p, const MapConfig& cfg, const AlgebraPtr& alg) {
  double a = cfg.a_scale, t = cfg.t_shift;
  if (cfg.use_trace_shift) {
    auto [at, tt] = trace_shift(companion_matrix(p));
    a = at;
    t = tt;
  }
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double a_try = a * (1.0 + static_cast<double>(attempt) / 32.0);
    try {
      return {cayley(alg, a_try, t), a_try, t};
    } catch (const SingularElement&) {
      if (attempt == 3) throw;
    }
  }
  throw SingularElement("build_cayley: unreachable");
}

EigenspaceResult extract_against_companion(const Polynomial& p, const FrobeniusElement& w,
                                           int r_plus, std::uint64_t seed, int power_sweeps) {
  DenseMatrix basis = dominant_eigenspace(w, r_plus, seed, power_sweeps);
  EigenspaceResult res = compress(companion_matrix(p), basis);
  if (res.residual > 1e-8 && power_sweeps <= 1) {
    // One extra power pass sharpens a subspace extracted at a narrow gap.
    DenseMatrix basis2 = dominant_eigenspace(w, r_plus, seed, 2);
    EigenspaceResult res2 = compress(companion_matrix(p), basis2);
    if (res2.residual < res.residual) return res2;
  }
  return res;
}

}  // namespace

EigenspaceResult real_line_squaring(const Polynomial& p, const MapConfig& cfg, int r_plus,
                                    std::uint64_t seed) {
  if (!p.is_real()) throw RootfindError("real_line_squaring: polynomial must be real");
  AlgebraPtr alg = make_algebra(p);
  ShiftedCayley sc = build_cayley(p, cfg, alg);
  const double log_tau = std::log(cfg.tau);

  int h_budget = cfg.h_plus;
  for (int attempt = 0; attempt < 3; ++attempt) {
    FrobeniusElement pk = sc.element;
    double unscale_log = 0.0;  // log(true P^k / stored element)
    bool tau_tripped = false;
    int g = 0;
    while (g < h_budget) {
      const double nrm = element_norm(pk);
      double log_factor = 0.0;
      FrobeniusElement cur = pk;
      if (nrm > 0.0 && std::isfinite(nrm)) {
        cur = scale(cur, cx(1.0 / nrm, 0.0));
        log_factor = 2.0 * std::log(nrm);
      }
      FrobeniusElement next = mul(cur, cur);
      const double next_unscale = 2.0 * unscale_log + log_factor;
      for (const auto& z : next.residue().coeffs())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
          throw Overflow("real_line_squaring: squaring overflowed");
      const double log_norm = std::log(std::max(element_norm(next), 1e-300)) + next_unscale;
      if (g > 0 && log_norm > log_tau) {
        // Keep the previous power: past tau the back-map inversion would
        // operate at an absolute error floor of ||P^k|| * u.
        tau_tripped = true;
        break;
      }
      pk = std::move(next);
      unscale_log = next_unscale;
      ++g;
    }

    // Undo the scaling so the back-map sees the true power.
    if (std::abs(unscale_log) >= 600.0)
      throw Overflow("real_line_squaring: unscaled power out of double range");
    FrobeniusElement true_pk = scale(pk, cx(std::exp(unscale_log), 0.0));
    try {
      FrobeniusElement m_k = mk_map(true_pk);
      FrobeniusElement q_k = add_scalar(mul(m_k, m_k), cx(1.0, 0.0));
      return extract_against_companion(p, q_k, r_plus, Rng::derive(seed, static_cast<std::uint64_t>(attempt)),
                                       cfg.power_sweeps);
    } catch (const NoDominance&) {
      // More squarings only help when the budget, not tau, ended the loop.
      if (tau_tripped || attempt == 2) throw;
      h_budget *= 2;
    }
  }
  throw NoDominance("real_line_squaring: unreachable");
}

EigenspaceResult mobius_isolation(const Polynomial& p, const MapConfig& cfg, int k, int r_plus,
                                  std::uint64_t seed) {
  if (!p.is_real()) throw RootfindError("mobius_isolation: polynomial must be real");
  AlgebraPtr alg = make_algebra(p);
  ShiftedCayley sc = build_cayley(p, cfg, alg);

  FrobeniusElement t_k = tk_map(sc.element, k);
  // Real-root images lie in [-2,2], nonreal ones outside the 8/3 disc, so the
  // inverse makes the real-image eigenspace dominant; scaled squaring then
  // sharpens the gap until extraction succeeds.
  FrobeniusElement w = invert(t_k);
  for (int g = 0; g < cfg.h_plus; ++g) {
    const double nrm = element_norm(w);
    FrobeniusElement cur = (nrm > 0.0 && std::isfinite(nrm)) ? scale(w, cx(1.0 / nrm, 0.0)) : w;
    w = mul(cur, cur);
    try {
      return extract_against_companion(p, w, r_plus, Rng::derive(seed, static_cast<std::uint64_t>(g)),
                                       cfg.power_sweeps);
    } catch (const NoDominance&) {
      if (g == cfg.h_plus - 1) throw;
    }
  }
  throw NoDominance("mobius_isolation: unreachable");
}

EigenspaceResult shifted_power_pipeline(const Polynomial& p, cx s, ShiftedPowerMode mode,
                                        int h, int r_plus, std::uint64_t seed) {
  if (mode == ShiftedPowerMode::largest) {
    AlgebraPtr alg = make_algebra(p);
    FrobeniusElement shifted(alg, Polynomial(std::vector<cx>{-s, cx(1.0, 0.0)}));
    PowerResult pr = power_squaring(shifted, h, true);
    DenseMatrix basis = dominant_eigenspace(pr.value, r_plus, seed);
    return compress(companion_matrix(p), basis);
  }

  // nearest: the reversed shifted polynomial has roots 1/(lambda - s), so the
  // eigenvalues nearest s become dominant without any matrix inversion.
  if (std::abs(evaluate(p, s)) <=
      1e-12 * p.max_coeff_abs() * std::max(1.0, std::pow(std::abs(s), p.degree())))
    throw SingularElement("shifted_power_pipeline: shift point is a root");
  Polynomial shifted = taylor_shift(p, s);
  Polynomial rev = reverse(shifted);
  AlgebraPtr alg = make_algebra(rev);
  PowerResult pr = power_squaring(element_x(alg), h, true);
  DenseMatrix basis = dominant_eigenspace(pr.value, r_plus, seed);
  EigenspaceResult rev_res = compress(companion_matrix(rev), basis);

  // Map recovered values back and rebuild an eigenspace of C_p itself from
  // inverse-iteration vectors, so the result block belongs to C_p.
  DenseMatrix cp = companion_matrix(p);
  const int n = cp.rows();
  Rng rng(Rng::derive(seed, 0x5eedULL));
  DenseMatrix vecs(n, static_cast<int>(rev_res.eigenvalues.size()));
  int col = 0;
  for (cx nu : rev_res.eigenvalues) {
    const cx lambda = s + cx(1.0, 0.0) / nu;
    std::vector<cx> v(static_cast<std::size_t>(n));
    for (auto& z : v) z = rng.gaussian_complex();
    try {
      RqiResult rq = rayleigh_quotient_iteration(cp, lambda, v, 8);
      vecs.set_column(col, rq.v);
    } catch (const NoConvergence&) {
      // Keep the crude direction: one inverse-iteration step at lambda.
      vecs.set_column(col, v);
    }
    ++col;
  }
  QRFactors f = qr(vecs);
  DenseMatrix ortho(n, vecs.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < vecs.cols(); ++j) ortho(i, j) = f.q(i, j);
  return compress(cp, ortho);
}

int suggested_squarings(const DenseMatrix& p_dense, double tau) {
  double radius = 0.0;
  for (const auto& [c, r] : gerschgorin_discs(p_dense)) radius = std::max(radius, std::abs(c) + r);
  if (radius <= 1.0) return 1;
  const double per_squaring = std::log(radius);
  const double needed = std::log(tau);
  int h = 1;
  double growth = per_squaring;
  while (growth * 2.0 <= needed && h < 60) {
    growth *= 2.0;
    ++h;
  }
  return h;
}

}  // namespace rootfind
