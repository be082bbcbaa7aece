#include "rootfind/frobenius.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind/errors.hpp"

namespace rootfind {

namespace {

std::vector<cx> reversed(const std::vector<cx>& c) {
  return std::vector<cx>(c.rbegin(), c.rend());
}

}  // namespace

FrobeniusAlgebra::FrobeniusAlgebra(Polynomial modulus) : modulus_(std::move(modulus)) {
  if (modulus_.degree() < 1)
    throw RootfindError("FrobeniusAlgebra: modulus degree must be >= 1");
}

void FrobeniusAlgebra::ensure_series() const {
  if (series_ready_) return;
  // Power-series inverse of the reversed modulus by the direct recurrence:
  // local sums keep every coefficient relatively accurate even when the
  // series grows like (max root radius)^j.
  const std::vector<cx> f = reversed(modulus_.coeffs());
  const std::size_t len = static_cast<std::size_t>(modulus_.degree());
  std::vector<cx> g(std::max<std::size_t>(len, 1), cx(0.0, 0.0));
  g[0] = cx(1.0, 0.0) / f[0];
  double growth = std::abs(g[0]);
  for (std::size_t j = 1; j < g.size(); ++j) {
    cx s(0.0, 0.0);
    for (std::size_t i = 1; i <= j && i < f.size(); ++i) s += f[i] * g[j - i];
    g[j] = -s / f[0];
    growth = std::max(growth, std::abs(g[j]));
  }
  inv_rev_ = std::move(g);
  // FFT convolutions carry an absolute error of order u * (series magnitude);
  // beyond this growth the quotient path would poison small coefficients, so
  // reduction falls back to classical long division.
  fast_ok_ = growth * static_cast<double>(modulus_.degree() + 1) <= 1e8;
  series_ready_ = true;
}

Polynomial FrobeniusAlgebra::reduce(const Polynomial& q) const {
  const int n = modulus_.degree();
  if (q.degree() < n) return q;
  ensure_series();
  const int m = q.degree();
  const std::size_t qlen = static_cast<std::size_t>(m - n) + 1;  // quotient length

  if (!fast_ok_ || qlen > inv_rev_.size()) {
    // Classical long division, numerically safe for ill-scaled moduli.
    std::vector<cx> r = q.coeffs();
    const cx lead = modulus_.leading();
    for (int k = m; k >= n; --k) {
      const cx f = r[static_cast<std::size_t>(k)] / lead;
      if (f == cx(0.0, 0.0)) continue;
      for (int j = 0; j <= n; ++j)
        r[static_cast<std::size_t>(k - n + j)] -= f * modulus_.coeff(j);
    }
    r.resize(static_cast<std::size_t>(n));
    return Polynomial(std::move(r));
  }

  std::vector<cx> rq = reversed(q.coeffs());
  rq.resize(std::min(rq.size(), qlen));
  std::vector<cx> quot_rev =
      convolve(rq, std::vector<cx>(inv_rev_.begin(),
                                   inv_rev_.begin() + static_cast<std::ptrdiff_t>(qlen)));
  quot_rev.resize(qlen);
  std::vector<cx> quot = reversed(quot_rev);
  // remainder = q - quot * modulus, truncated below degree n
  std::vector<cx> qp = convolve(quot, modulus_.coeffs());
  std::vector<cx> rem(static_cast<std::size_t>(n), cx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    cx v = q.coeff(i);
    if (static_cast<std::size_t>(i) < qp.size()) v -= qp[static_cast<std::size_t>(i)];
    rem[static_cast<std::size_t>(i)] = v;
  }
  return Polynomial(std::move(rem));
}

AlgebraPtr make_algebra(Polynomial modulus) {
  return std::make_shared<const FrobeniusAlgebra>(std::move(modulus));
}

FrobeniusElement::FrobeniusElement(AlgebraPtr algebra, Polynomial residue)
    : algebra_(std::move(algebra)), residue_(std::move(residue)) {
  if (residue_.degree() >= algebra_->n()) residue_ = algebra_->reduce(residue_);
}

namespace {

void check_same_algebra(const FrobeniusElement& a, const FrobeniusElement& b) {
  if (a.algebra() == b.algebra()) return;
  if (a.algebra()->modulus().coeffs() == b.algebra()->modulus().coeffs()) return;
  throw ModulusMismatch("frobenius: elements from different algebras");
}

}  // namespace

FrobeniusElement from_poly(const Polynomial& q, const AlgebraPtr& algebra) {
  return FrobeniusElement(algebra, algebra->reduce(q));
}

FrobeniusElement element_one(const AlgebraPtr& algebra) {
  return FrobeniusElement(algebra, Polynomial(std::vector<cx>{cx(1.0, 0.0)}));
}

FrobeniusElement element_x(const AlgebraPtr& algebra) {
  return from_poly(Polynomial(std::vector<cx>{cx(0.0, 0.0), cx(1.0, 0.0)}), algebra);
}

FrobeniusElement element_scalar(cx s, const AlgebraPtr& algebra) {
  return FrobeniusElement(algebra, Polynomial(std::vector<cx>{s}));
}

FrobeniusElement mul(const FrobeniusElement& a, const FrobeniusElement& b) {
  check_same_algebra(a, b);
  return FrobeniusElement(a.algebra(),
                          a.algebra()->reduce(mul(a.residue(), b.residue())));
}

FrobeniusElement add(const FrobeniusElement& a, const FrobeniusElement& b) {
  check_same_algebra(a, b);
  return FrobeniusElement(a.algebra(), add(a.residue(), b.residue()));
}

FrobeniusElement sub(const FrobeniusElement& a, const FrobeniusElement& b) {
  check_same_algebra(a, b);
  return FrobeniusElement(a.algebra(), sub(a.residue(), b.residue()));
}

FrobeniusElement add_scalar(const FrobeniusElement& a, cx s) {
  std::vector<cx> c = a.residue().coeffs();
  c[0] += s;
  return FrobeniusElement(a.algebra(), Polynomial(std::move(c)));
}

FrobeniusElement scale(const FrobeniusElement& a, cx s) {
  return FrobeniusElement(a.algebra(), scale(a.residue(), s));
}

namespace {

struct DivModResult {
  std::vector<cx> quot;
  std::vector<cx> rem;
};

// Classical long division, adequate at the quadratic cost for the Euclidean
// chain. Divisor leading coefficient must be the largest-degree entry.
DivModResult divmod_classical(const std::vector<cx>& num, const std::vector<cx>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  DivModResult out;
  if (dn < dd) {
    out.quot = {cx(0.0, 0.0)};
    out.rem = num;
    return out;
  }
  std::vector<cx> r = num;
  out.quot.assign(static_cast<std::size_t>(dn - dd) + 1, cx(0.0, 0.0));
  const cx lead = den[static_cast<std::size_t>(dd)];
  for (int k = dn - dd; k >= 0; --k) {
    const cx q = r[static_cast<std::size_t>(k + dd)] / lead;
    out.quot[static_cast<std::size_t>(k)] = q;
    if (q == cx(0.0, 0.0)) continue;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k + j)] -= q * den[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(std::max(dd, 1)));
  return {std::move(out.quot), std::move(r)};
}

int effective_degree(const std::vector<cx>& c, double tol) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (std::abs(c[static_cast<std::size_t>(i)]) > tol) return i;
  return -1;
}

double max_abs(const std::vector<cx>& c) {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace

FrobeniusElement invert(const FrobeniusElement& a) {
  const AlgebraPtr& alg = a.algebra();
  const int n = alg->n();
  const double kSingularTol = 1e-12;

  // Extended Euclid on (p, residue), tracking only the combination coefficient
  // of the residue: r = t p + s a throughout. Remainders are renormalized to
  // unit max magnitude each step; the near-singularity threshold is relative
  // to that scale.
  std::vector<cx> r_prev = alg->modulus().coeffs();
  std::vector<cx> s_prev{cx(0.0, 0.0)};
  std::vector<cx> r_cur = a.residue().coeffs();
  std::vector<cx> s_cur{cx(1.0, 0.0)};
  {
    const double m = max_abs(r_cur);
    if (m == 0.0) throw SingularElement("invert: zero element");
    for (auto& z : r_cur) z /= m;
    s_cur[0] /= m;
  }

  for (int step = 0; step <= 2 * n + 2; ++step) {
    const int deg = effective_degree(r_cur, kSingularTol);
    if (deg < 0)
      throw SingularElement("invert: gcd has positive degree (element vanishes on the spectrum)");
    if (deg == 0) {
      const cx c = r_cur[0];
      if (std::abs(c) < kSingularTol)
        throw SingularElement("invert: near-singular element, gcd constant below threshold");
      std::vector<cx> inv_res = s_cur;
      for (auto& z : inv_res) z /= c;
      FrobeniusElement b = from_poly(Polynomial(std::move(inv_res)), alg);
      // Newton polish squares away the Euclidean rounding error; keep a step
      // only while it actually shrinks the residual a b - 1.
      auto residual = [&](const FrobeniusElement& cand) {
        Polynomial r = sub(mul(a, cand).residue(), Polynomial(std::vector<cx>{cx(1.0, 0.0)}));
        return r.max_coeff_abs();
      };
      double best = residual(b);
      for (int polish = 0; polish < 2 && best > 1e-15; ++polish) {
        FrobeniusElement ab = mul(a, b);
        FrobeniusElement correction = sub(scale(element_one(alg), cx(2.0, 0.0)), ab);
        FrobeniusElement b2 = mul(b, correction);
        const double r2 = residual(b2);
        if (r2 >= best) break;
        b = std::move(b2);
        best = r2;
      }
      return b;
    }
    std::vector<cx> den(r_cur.begin(), r_cur.begin() + deg + 1);
    auto dm = divmod_classical(r_prev, den);
    // s_new = s_prev - quot * s_cur
    std::vector<cx> qs = convolve(dm.quot, s_cur);
    std::vector<cx> s_new(std::max(s_prev.size(), qs.size()), cx(0.0, 0.0));
    for (std::size_t i = 0; i < s_prev.size(); ++i) s_new[i] += s_prev[i];
    for (std::size_t i = 0; i < qs.size(); ++i) s_new[i] -= qs[i];

    std::vector<cx> r_new = std::move(dm.rem);
    const double rm = max_abs(r_new);
    if (rm > 0.0) {
      for (auto& z : r_new) z /= rm;
      for (auto& z : s_new) z /= rm;
    }
    r_prev = std::move(den);
    s_prev = std::move(s_cur);
    r_cur = std::move(r_new);
    s_cur = std::move(s_new);
  }
  throw SingularElement("invert: Euclidean chain did not terminate");
}

double element_norm(const FrobeniusElement& a) {
  const int n = a.n();
  if (n <= 512) return norms(to_dense(a)).inf;
  double s = 0.0;
  for (const auto& z : a.residue().coeffs()) s += std::abs(z);
  return s;
}

PowerResult power_squaring(const FrobeniusElement& a, int h, bool scaled) {
  PowerResult pr{a, {}};
  for (int i = 0; i < h; ++i) {
    double log_factor = 0.0;
    FrobeniusElement cur = pr.value;
    if (scaled) {
      const double nrm = element_norm(cur);
      if (!std::isfinite(nrm)) throw Overflow("power_squaring: norm not finite");
      if (nrm > 0.0) {
        cur = scale(cur, cx(1.0 / nrm, 0.0));  // squares to M^2 / ||M||^2
        log_factor = -2.0 * std::log(nrm);
      }
    }
    pr.value = mul(cur, cur);
    pr.scale_log.push_back(log_factor);
    for (const auto& z : pr.value.residue().coeffs())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Overflow("power_squaring: non-finite coefficient after squaring");
  }
  return pr;
}

double power_unscale_log(const PowerResult& pr) {
  // value = a^(2^h) * prod a_i^(2^(h-1-i)) with log a_i recorded in order.
  double total = 0.0;
  const int h = static_cast<int>(pr.scale_log.size());
  for (int i = 0; i < h; ++i)
    total += std::ldexp(pr.scale_log[static_cast<std::size_t>(i)], h - 1 - i);
  return total;
}

FrobeniusElement cayley(const AlgebraPtr& algebra, double a_scale, double t_shift) {
  // a(x+t) +- i as degree-1 residues
  Polynomial num(std::vector<cx>{cx(a_scale * t_shift, 1.0), cx(a_scale, 0.0)});
  Polynomial den(std::vector<cx>{cx(a_scale * t_shift, -1.0), cx(a_scale, 0.0)});
  FrobeniusElement u(algebra, num);
  FrobeniusElement v(algebra, den);
  return mul(u, invert(v));
}

std::vector<cx> apply_to_vector(const FrobeniusElement& a, const std::vector<cx>& v) {
  const int n = a.n();
  if (static_cast<int>(v.size()) != n)
    throw DimensionMismatch("apply_to_vector: vector length != n");
  // q(C_p) w = coefficients of q(x) w(x) mod p(x); the product is a pair of
  // triangular-Toeplitz applications done with one FFT product + reduction.
  Polynomial w(v);
  Polynomial prod = mul(a.residue(), w);
  Polynomial red = a.algebra()->reduce(prod);
  std::vector<cx> out(static_cast<std::size_t>(n), cx(0.0, 0.0));
  for (int i = 0; i <= red.degree() && i < n; ++i) out[static_cast<std::size_t>(i)] = red.coeff(i);
  return out;
}

DenseMatrix to_dense(const FrobeniusElement& a) {
  // Column j is residue * x^j mod p; successive columns follow from the
  // multiply-by-x recurrence, which is exactly apply_to_vector on e_j.
  const int n = a.n();
  const Polynomial& p = a.algebra()->modulus();
  const cx lead = p.leading();
  std::vector<cx> pn(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pn[static_cast<std::size_t>(i)] = p.coeff(i) / lead;
  DenseMatrix m(n, n);
  std::vector<cx> col(static_cast<std::size_t>(n), cx(0.0, 0.0));
  for (int i = 0; i <= a.residue().degree(); ++i) col[static_cast<std::size_t>(i)] = a.residue().coeff(i);
  for (int j = 0; j < n; ++j) {
    m.set_column(j, col);
    if (j + 1 < n) {
      const cx top = col[static_cast<std::size_t>(n - 1)];
      for (int i = n - 1; i > 0; --i)
        col[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i - 1)] - top * pn[static_cast<std::size_t>(i)];
      col[0] = -top * pn[0];
    }
  }
  return m;
}

DenseMatrix apply_to_block(const FrobeniusElement& a, const DenseMatrix& g) {
  if (g.rows() != a.n()) throw DimensionMismatch("apply_to_block: row count != n");
  DenseMatrix out(g.rows(), g.cols());
  for (int j = 0; j < g.cols(); ++j) out.set_column(j, apply_to_vector(a, g.column_vector(j)));
  return out;
}

}  // namespace rootfind
