#include "rootfind/eigenspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rootfind/errors.hpp"

namespace rootfind {

namespace {

constexpr double kGapFactor = 1e3;  // quantifies "strongly dominant"

DenseMatrix sample_multiplier(int n, int cols, bool toeplitz, Rng& rng) {
  // Resample once if the multiplier looks badly conditioned.
  for (int attempt = 0; attempt < 2; ++attempt) {
    DenseMatrix g = toeplitz ? gaussian_toeplitz(n, cols, rng) : gaussian_matrix(n, cols, rng);
    auto [f, rank] = rrqr(g, 0.0);
    const int k = std::min(n, cols);
    const double hi = std::abs(f.r(0, 0));
    const double lo = std::abs(f.r(k - 1, k - 1));
    if (lo > 1e-6 * hi) return g;
  }
  return toeplitz ? gaussian_toeplitz(n, cols, rng) : gaussian_matrix(n, cols, rng);
}

DenseMatrix orthonormal_columns(const DenseMatrix& y, int keep) {
  QRFactors f = qr(y);
  DenseMatrix basis(y.rows(), keep);
  for (int i = 0; i < y.rows(); ++i)
    for (int j = 0; j < keep; ++j) basis(i, j) = f.q(i, j);
  return basis;
}

DominantCut dominant_impl(const std::function<DenseMatrix(const DenseMatrix&)>& apply, int n,
                          bool toeplitz, int r_plus, std::uint64_t seed, int power_sweeps) {
  if (r_plus < 1) throw NoDominance("dominant_eigenspace: r_plus must be >= 1");
  Rng rng(seed);
  const int cols = std::min(n, r_plus + 1);
  DenseMatrix g = sample_multiplier(n, cols, toeplitz, rng);
  DenseMatrix y = apply(g);
  auto [f, rank_unused] = rrqr(y, 0.0);
  (void)rank_unused;

  const int limit = std::min(r_plus, std::min(y.rows(), y.cols()) - 1);
  int cut = 0;
  const double scale = std::abs(f.r(0, 0));
  if (scale <= 0.0) throw NoDominance("dominant_eigenspace: operator image is zero");
  for (int k = 1; k <= limit; ++k) {
    const double hi = std::abs(f.r(k - 1, k - 1));
    const double lo = std::abs(f.r(k, k));
    if (hi >= kGapFactor * lo && hi > 1e-280) {
      cut = k;
      break;
    }
  }
  if (cut == 0)
    throw NoDominance("dominant_eigenspace: no strongly dominant eigenspace within r_plus");

  DominantCut out;
  out.cut = cut;
  out.head = scale;
  out.last_kept = std::abs(f.r(cut - 1, cut - 1));
  out.tail = (cut < std::min(y.rows(), y.cols())) ? std::abs(f.r(cut, cut)) : 0.0;
  DenseMatrix basis(n, cut);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < cut; ++j) basis(i, j) = f.q(i, j);
  for (int sweep = 1; sweep < power_sweeps; ++sweep)
    basis = orthonormal_columns(apply(basis), cut);
  out.basis = std::move(basis);
  return out;
}

}  // namespace

DenseMatrix dominant_eigenspace(const DenseMatrix& w, int r_plus, std::uint64_t seed,
                                int power_sweeps) {
  if (w.rows() != w.cols()) throw DimensionMismatch("dominant_eigenspace: not square");
  return dominant_impl([&](const DenseMatrix& g) { return w * g; }, w.rows(), false, r_plus,
                       seed, power_sweeps)
      .basis;
}

DenseMatrix dominant_eigenspace(const FrobeniusElement& w, int r_plus, std::uint64_t seed,
                                int power_sweeps) {
  return dominant_impl([&](const DenseMatrix& g) { return apply_to_block(w, g); }, w.n(), true,
                       r_plus, seed, power_sweeps)
      .basis;
}

DenseMatrix dominant_eigenspace_op(const std::function<DenseMatrix(const DenseMatrix&)>& apply,
                                   int n, int r_plus, std::uint64_t seed, int power_sweeps) {
  return dominant_impl(apply, n, false, r_plus, seed, power_sweeps).basis;
}

DominantCut dominant_eigenspace_diag(const std::function<DenseMatrix(const DenseMatrix&)>& apply,
                                     int n, int r_plus, std::uint64_t seed, int power_sweeps) {
  return dominant_impl(apply, n, false, r_plus, seed, power_sweeps);
}

EigenspaceResult compress(const DenseMatrix& m, const DenseMatrix& basis) {
  EigenspaceResult res;
  res.basis = basis;
  DenseMatrix mu = m * basis;
  res.block = conj_transpose(basis) * mu;
  res.eigenvalues = small_eig(res.block);
  DenseMatrix diff = mu - basis * res.block;
  const double mn = norms(m).inf;
  res.residual = norms(diff).inf / (mn > 0.0 ? mn : 1.0);
  return res;
}

namespace {

double subspace_sine(const DenseMatrix& q_new, const DenseMatrix& q_old) {
  DenseMatrix overlap = conj_transpose(q_new) * q_old;
  DenseMatrix gram = conj_transpose(overlap) * overlap;  // Hermitian PSD, r x r
  double smin2 = 1.0;
  for (cx ev : small_eig(gram)) smin2 = std::min(smin2, std::max(0.0, ev.real()));
  return std::sqrt(std::max(0.0, 1.0 - smin2));
}

}  // namespace

DenseMatrix dominated_eigenspace(const DenseMatrix& w, int r_plus, int iters,
                                 std::uint64_t seed) {
  if (w.rows() != w.cols()) throw DimensionMismatch("dominated_eigenspace: not square");
  const int n = w.rows();
  Rng rng(seed);
  DenseMatrix q = orthonormal_columns(gaussian_matrix(n, std::min(n, r_plus), rng),
                                      std::min(n, r_plus));
  bool converged = false;
  for (int it = 0; it < iters; ++it) {
    DenseMatrix x = lu_solve(w, q);  // SingularMatrix propagates
    DenseMatrix q_new = orthonormal_columns(x, q.cols());
    const double rot = subspace_sine(q_new, q);
    q = std::move(q_new);
    if (rot < 1e-8) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("dominated_eigenspace: subspace did not settle");

  // Inverse iteration fixes any subspace of a gapless operator (e.g. the
  // identity), so validate dominance a posteriori: the block spectrum must be
  // small against the action on a direction outside the basis.
  const double s_in = [&] {
    double m = 0.0;
    for (cx ev : small_eig(conj_transpose(q) * (w * q))) m = std::max(m, std::abs(ev));
    return m;
  }();
  std::vector<cx> v(static_cast<std::size_t>(n));
  for (auto& z : v) z = cx(rng.gaussian(), 0.0);
  // Orthogonalize v against the basis and normalize.
  for (int j = 0; j < q.cols(); ++j) {
    cx dot(0.0, 0.0);
    for (int i = 0; i < n; ++i) dot += std::conj(q(i, j)) * v[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * q(i, j);
  }
  double vn = 0.0;
  for (const auto& z : v) vn += std::norm(z);
  vn = std::sqrt(vn);
  if (vn > 0.0) {
    for (auto& z : v) z /= vn;
    double s_out = 0.0;
    for (const auto& z : matvec(w, v)) s_out += std::norm(z);
    s_out = std::sqrt(s_out);
    if (s_in > s_out / kGapFactor)
      throw NoDominance("dominated_eigenspace: no strong dominance gap");
  }
  return q;
}

namespace {

// LU solve that floors tiny pivots instead of failing; the huge solution that
// results is exactly what inverse iteration wants near an eigenvalue.
std::vector<cx> solve_floored(DenseMatrix a, std::vector<cx> b) {
  const int n = a.rows();
  double scale = norms(a).inf;
  if (scale == 0.0) scale = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
    }
    if (std::abs(a(k, k)) < 1e-18 * scale) a(k, k) = cx(1e-18 * scale, 0.0);
    const cx inv_p = cx(1.0, 0.0) / a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cx l = a(i, k) * inv_p;
      if (l == cx(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
      b[static_cast<std::size_t>(i)] -= l * b[static_cast<std::size_t>(k)];
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    cx s = b[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) s -= a(k, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(k)] = s / a(k, k);
  }
  return b;
}

}  // namespace

RqiResult rayleigh_quotient_iteration(const DenseMatrix& m, cx lambda0, std::vector<cx> v0,
                                      int max_iters) {
  const int n = m.rows();
  if (static_cast<int>(v0.size()) != n)
    throw DimensionMismatch("rayleigh_quotient_iteration: v0 length");
  double vn = 0.0;
  for (const auto& z : v0) vn += std::norm(z);
  if (vn == 0.0) throw DimensionMismatch("rayleigh_quotient_iteration: v0 is zero");
  vn = std::sqrt(vn);
  for (auto& z : v0) z /= vn;

  const double mnorm = norms(m).inf;
  cx lambda = lambda0;
  std::vector<cx> v = std::move(v0);
  std::vector<double> residuals;
  for (int it = 1; it <= max_iters; ++it) {
    DenseMatrix shifted = m;
    add_scaled_identity(shifted, -lambda);
    std::vector<cx> w = solve_floored(std::move(shifted), v);
    double wn = 0.0;
    for (const auto& z : w) wn += std::norm(z);
    wn = std::sqrt(wn);
    if (wn == 0.0 || !std::isfinite(wn))
      throw NoConvergence("rayleigh_quotient_iteration: solve degenerated");
    for (auto& z : w) z /= wn;
    v = std::move(w);
    std::vector<cx> mv = matvec(m, v);
    cx num(0.0, 0.0);
    for (int i = 0; i < n; ++i) num += std::conj(v[static_cast<std::size_t>(i)]) * mv[static_cast<std::size_t>(i)];
    lambda = num;  // v is unit
    double resid = 0.0;
    for (int i = 0; i < n; ++i)
      resid += std::norm(mv[static_cast<std::size_t>(i)] - lambda * v[static_cast<std::size_t>(i)]);
    resid = std::sqrt(resid);
    residuals.push_back(resid);
    if (resid <= 1e-10 * std::max(mnorm, 1e-300))
      return {lambda, std::move(v), it, std::move(residuals)};
  }
  throw NoConvergence("rayleigh_quotient_iteration: no convergence in " +
                      std::to_string(max_iters) + " iterations");
}

RealPartition filter_real(const std::vector<cx>& values, const NearRealFilter& f) {
  RealPartition out;
  // Noise-level imaginary parts count as real; the relative noise band is
  // capped at 1e-8 so a loose epsilon still reports genuinely real values.
  const double noise_rel = std::min(f.epsilon, 1e-8);
  for (cx z : values) {
    const double im = std::abs(z.imag());
    const double mag = std::abs(z);
    if (im <= std::max(1e-10, noise_rel * mag))
      out.real_values.push_back(z.real());
    else if (im <= f.epsilon * mag)
      out.near_real.push_back(z);
    else
      out.rest.push_back(z);
  }
  return out;
}

}  // namespace rootfind
