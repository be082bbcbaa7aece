#include "rootfind/matrix_sign.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind/errors.hpp"
#include "rootfind/frobenius.hpp"
#include "rootfind/rng.hpp"
#include "rootfind/spectral_maps.hpp"

namespace rootfind {

namespace {

double rel_step(const DenseMatrix& next, const DenseMatrix& prev) {
  return norms(next - prev).inf / (1.0 + norms(next).inf);
}

void require_real(const DenseMatrix& m, const char* who) {
  for (const auto& z : m.data())
    if (z.imag() != 0.0) throw RootfindError(std::string(who) + ": matrix must be real");
}

}  // namespace

SignResult sign_newton(const DenseMatrix& a, const SignIterConfig& cfg) {
  if (a.rows() != a.cols()) throw DimensionMismatch("sign_newton: not square");
  SignResult res;
  DenseMatrix n = a;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    DenseMatrix inv = lu_invert(n);
    // alpha = ||N|| / ||N^-1||; iterating 0.5 (N + alpha N^-1) alone leaves the
    // overall scale free (any multiple of the sign matrix is stationary), so
    // the update carries the 1/sqrt(alpha) normalization that pins S^2 = I.
    double gamma = 1.0;
    if (cfg.variant == SignVariant::newton_scaled) {
      const double alpha = norms(n).inf / std::max(norms(inv).inf, 1e-300);
      gamma = 1.0 / std::sqrt(alpha);
    }
    DenseMatrix next = cx(0.5 * gamma, 0.0) * n + cx(0.5 / gamma, 0.0) * inv;
    const double step = rel_step(next, n);
    res.history.push_back(step);
    n = std::move(next);
    res.iters = it;
    if (step <= cfg.tol) {
      res.sign_matrix = std::move(n);
      res.converged = true;
      return res;
    }
  }
  throw NoConvergence("sign_newton: no convergence in " + std::to_string(cfg.max_iters) +
                      " iterations");
}

SignResult sign_pade20(const DenseMatrix& a, const SignIterConfig& cfg) {
  if (a.rows() != a.cols()) throw DimensionMismatch("sign_pade20: not square");
  SignResult res;
  DenseMatrix n = a;
  int growth_streak = 0;
  double prev_step = -1.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    DenseMatrix n2 = n * n;
    DenseMatrix n4 = n2 * n2;
    DenseMatrix poly = DenseMatrix::identity(n.rows());
    for (auto& z : poly.data()) z *= cx(15.0, 0.0);
    poly = poly - cx(10.0, 0.0) * n2 + cx(3.0, 0.0) * n4;
    DenseMatrix next = cx(0.125, 0.0) * (poly * n);
    if (!next.all_finite()) throw Diverged("sign_pade20: iterate overflowed");
    const double step = rel_step(next, n);
    res.history.push_back(step);
    n = std::move(next);
    res.iters = it;
    if (step <= cfg.tol) {
      res.sign_matrix = std::move(n);
      res.converged = true;
      return res;
    }
    growth_streak = (prev_step >= 0.0 && step > prev_step) ? growth_streak + 1 : 0;
    if (growth_streak >= 3) throw Diverged("sign_pade20: step sizes grow, spectrum off basin");
    prev_step = step;
  }
  throw NoConvergence("sign_pade20: no convergence in " + std::to_string(cfg.max_iters) +
                      " iterations");
}

SignResult sign_real_newton(const DenseMatrix& m, const SignIterConfig& cfg) {
  if (m.rows() != m.cols()) throw DimensionMismatch("sign_real_newton: not square");
  require_real(m, "sign_real_newton");
  SignResult res;
  Rng rng(cfg.seed);
  const double default_range = 0.1 * norms(m).inf / static_cast<double>(m.rows());
  const double range = cfg.shift_range >= 0.0 ? cfg.shift_range : default_range;

  DenseMatrix n = m;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    DenseMatrix inv;
    bool inverted = false;
    for (int attempt = 0; attempt < 4 && !inverted; ++attempt) {
      try {
        inv = lu_invert(n);
        inverted = true;
      } catch (const SingularMatrix&) {
        // A real eigenvalue image hit zero; a small random shift moves on.
        const double rho = rng.uniform(-range, range);
        add_scaled_identity(n, cx(rho, 0.0));
        ++res.singular_shift_events;
      }
    }
    if (!inverted)
      throw NoConvergence("sign_real_newton: persistent singularity after shifts");
    // Same normalization as the complex scaled variant.
    double gamma = 1.0;
    if (cfg.variant == SignVariant::real_newton_scaled) {
      const double alpha = norms(n).inf / std::max(norms(inv).inf, 1e-300);
      gamma = 1.0 / std::sqrt(alpha);
    }
    DenseMatrix next = cx(0.5 * gamma, 0.0) * n - cx(0.5 / gamma, 0.0) * inv;
    const double step = rel_step(next, n);
    res.history.push_back(step);
    n = std::move(next);
    res.iters = it;
    if (step <= cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.sign_matrix = std::move(n);
  return res;
}

SignResult sign_real_pade(const DenseMatrix& m, const SignIterConfig& cfg) {
  if (m.rows() != m.cols()) throw DimensionMismatch("sign_real_pade: not square");
  require_real(m, "sign_real_pade");
  SignResult res;
  DenseMatrix n = m;
  int growth_streak = 0;
  double prev_step = -1.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (cfg.norm_control && norms(n).inf > 10.0) {
      // Pulls real images into [-sqrt(2)/4, sqrt(2)/4] while dilating the
      // +-i discs only mildly.
      DenseMatrix n2 = n * n;
      add_scaled_identity(n2, cx(2.0, 0.0));
      n = lu_solve(n2, n);
    }
    DenseMatrix n2 = n * n;
    DenseMatrix n3 = n2 * n;
    DenseMatrix n5 = n2 * n3;
    DenseMatrix next(n.rows(), n.cols());
    for (std::size_t i = 0; i < next.data().size(); ++i)
      next.data()[i] = -0.125 * (3.0 * n5.data()[i] + 10.0 * n3.data()[i] + 15.0 * n.data()[i]);
    if (!next.all_finite()) throw Diverged("sign_real_pade: iterate overflowed");
    const double step = rel_step(next, n);
    res.history.push_back(step);
    n = std::move(next);
    res.iters = it;
    if (step <= cfg.tol) {
      res.converged = true;
      break;
    }
    growth_streak = (prev_step >= 0.0 && step > prev_step) ? growth_streak + 1 : 0;
    if (growth_streak >= 3) throw Diverged("sign_real_pade: step sizes grow");
    prev_step = step;
  }
  res.sign_matrix = std::move(n);
  return res;
}

std::pair<DenseMatrix, DenseMatrix> basin_move(const Polynomial& p, int k) {
  AlgebraPtr alg = make_algebra(p);
  FrobeniusElement pc = cayley(alg, 1.0, 0.0);
  DenseMatrix t = to_dense(tk_map(pc, k));
  DenseMatrix plus = cx(0.1, 0.0) * t;
  DenseMatrix minus = plus;
  add_scaled_identity(plus, cx(0.0, 1.0));
  add_scaled_identity(minus, cx(0.0, -1.0));
  return {plus, minus};
}

Projectors spectral_projectors(const SignResult& s) {
  const DenseMatrix& sg = s.sign_matrix;
  Projectors pr;
  pr.p_minus = DenseMatrix::identity(sg.rows()) - sg;
  pr.p_plus = DenseMatrix::identity(sg.rows()) + sg;
  pr.p_axis = DenseMatrix::identity(sg.rows()) - sg * sg;
  pr.count_minus = rrqr(pr.p_minus).second;
  pr.count_plus = rrqr(pr.p_plus).second;
  pr.count_axis = rrqr(pr.p_axis).second;
  return pr;
}

namespace {

SignResult run_sign(const DenseMatrix& b, const SignIterConfig& cfg) {
  if (cfg.variant == SignVariant::pade20) return sign_pade20(b, cfg);
  return sign_newton(b, cfg);
}

int guarded_round(double x, const char* who) {
  const double r = std::round(x);
  if (std::abs(x - r) >= 0.1)
    throw AmbiguousCount(std::string(who) + ": projector trace " + std::to_string(x) +
                         " is not near an integer");
  return static_cast<int>(r);
}

}  // namespace

std::pair<int, int> count_in_halfplane(const DenseMatrix& a, cx alpha, cx sigma,
                                       const SignIterConfig& cfg) {
  if (a.rows() != a.cols()) throw DimensionMismatch("count_in_halfplane: not square");
  DenseMatrix b = alpha * a;
  add_scaled_identity(b, -sigma);
  SignIterConfig c = cfg;
  if (c.variant != SignVariant::pade20) c.variant = SignVariant::newton_scaled;
  SignResult s = run_sign(b, c);
  const double tr = trace(s.sign_matrix).real();
  const double n = static_cast<double>(a.rows());
  const int left = guarded_round(0.5 * (n - tr), "count_in_halfplane");
  const int right = guarded_round(0.5 * (n + tr), "count_in_halfplane");
  return {left, right};
}

std::pair<int, int> count_in_halfplane(const Polynomial& p, cx alpha, cx sigma,
                                       const SignIterConfig& cfg) {
  return count_in_halfplane(companion_matrix(p), alpha, sigma, cfg);
}

LineSignCache::LineSignCache(DenseMatrix a, SignIterConfig cfg, int budget)
    : a_(std::move(a)), cfg_(std::move(cfg)), budget_(budget) {
  if (cfg_.variant != SignVariant::pade20) cfg_.variant = SignVariant::newton_scaled;
}

const DenseMatrix& LineSignCache::sign_for(int axis, double offset) {
  const auto key = std::make_pair(axis, offset);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  double effective = offset;
  for (int attempt = 0;; ++attempt) {
    if (evaluations_ >= budget_)
      throw BudgetExceeded("quadtree: sign evaluation budget exhausted");
    ++evaluations_;
    try {
      DenseMatrix b;
      if (axis == 0) {
        b = a_;
        add_scaled_identity(b, cx(-effective, 0.0));
      } else {
        b = cx(0.0, -1.0) * a_;
        add_scaled_identity(b, cx(-effective, 0.0));
      }
      SignResult s = run_sign(b, cfg_);
      return cache_.emplace(key, std::move(s.sign_matrix)).first->second;
    } catch (const RootfindError&) {
      if (attempt >= 3) throw;
      // An eigenvalue sits on (or hugs) the line; nudge it.
      effective = offset + (1.0 + std::abs(offset)) * 1.37e-4 * static_cast<double>(attempt + 1);
    }
  }
}

namespace {

struct Rect {
  double x1, x2, y1, y2;
  Box to_box() const {
    return Box{cx(0.5 * (x1 + x2), 0.5 * (y1 + y2)), 0.5 * (x2 - x1)};
  }
};

// Product of the four half-plane projectors; for the commuting sign family the
// trace counts the eigenvalues inside the rectangle.
int count_in_rect(LineSignCache& lines, const Rect& r) {
  const int n = lines.matrix().rows();
  DenseMatrix a = DenseMatrix::identity(n) + lines.sign_for(0, r.x1);
  DenseMatrix b = DenseMatrix::identity(n) - lines.sign_for(0, r.x2);
  DenseMatrix c = DenseMatrix::identity(n) + lines.sign_for(1, r.y1);
  DenseMatrix d = DenseMatrix::identity(n) - lines.sign_for(1, r.y2);
  DenseMatrix prod = (a * b) * (c * d);
  return guarded_round(trace(prod).real() / 16.0, "count_in_box");
}

}  // namespace

int count_in_box(LineSignCache& lines, const Box& box) {
  return count_in_rect(lines, Rect{box.center.real() - box.half_width,
                                   box.center.real() + box.half_width,
                                   box.center.imag() - box.half_width,
                                   box.center.imag() + box.half_width});
}

std::vector<BoxCount> quadtree_isolate(const Polynomial& p, const Box& box, int target_count,
                                       double min_width, const SignIterConfig& cfg,
                                       LineSignCache* shared_lines) {
  const int n = p.degree();
  LineSignCache local(companion_matrix(p), cfg, 10 * n);
  LineSignCache& lines = shared_lines ? *shared_lines : local;

  std::vector<BoxCount> leaves;
  std::vector<Rect> stack{Rect{box.center.real() - box.half_width,
                               box.center.real() + box.half_width,
                               box.center.imag() - box.half_width,
                               box.center.imag() + box.half_width}};
  while (!stack.empty()) {
    Rect r = stack.back();
    stack.pop_back();
    const int count = count_in_rect(lines, r);
    if (count == 0) continue;
    const double width = r.x2 - r.x1;
    if (count <= target_count || width * 0.5 < min_width) {
      leaves.push_back({r.to_box(), count});
      continue;
    }
    const double xm = 0.5 * (r.x1 + r.x2);
    const double ym = 0.5 * (r.y1 + r.y2);
    stack.push_back(Rect{r.x1, xm, r.y1, ym});
    stack.push_back(Rect{xm, r.x2, r.y1, ym});
    stack.push_back(Rect{r.x1, xm, ym, r.y2});
    stack.push_back(Rect{xm, r.x2, ym, r.y2});
  }
  return leaves;
}

std::vector<double> scalar_convergence_check(cx lambda0, ScalarSignVariant variant, int iters) {
  std::vector<double> errors;
  errors.reserve(static_cast<std::size_t>(iters) + 1);
  cx l = lambda0;
  const double delta_newton = (lambda0.real() >= 0.0) ? 1.0 : -1.0;
  auto err = [&](cx z) {
    if (variant == ScalarSignVariant::newton) return std::abs(z - cx(delta_newton, 0.0));
    return std::min(std::abs(z - cx(1.0, 0.0)), std::abs(z + cx(1.0, 0.0)));
  };
  errors.push_back(err(l));
  for (int i = 0; i < iters; ++i) {
    if (variant == ScalarSignVariant::newton)
      l = 0.5 * (l + 1.0 / l);
    else
      l = l * (15.0 - 10.0 * l * l + 3.0 * l * l * l * l) / 8.0;
    errors.push_back(err(l));
  }
  return errors;
}

}  // namespace rootfind
