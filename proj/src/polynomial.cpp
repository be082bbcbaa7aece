#include "rootfind/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind/errors.hpp"
#include "rootfind/rng.hpp"

namespace rootfind {

namespace {

std::vector<cx> trimmed(std::vector<cx> c) {
  while (c.size() > 1 && c.back() == cx(0.0, 0.0)) c.pop_back();
  if (c.empty()) c.push_back(cx(0.0, 0.0));
  return c;
}

bool all_real(const std::vector<cx>& c) {
  for (const auto& z : c)
    if (z.imag() != 0.0) return false;
  return true;
}

}  // namespace

Polynomial::Polynomial(std::vector<cx> coeffs)
    : coeffs_(trimmed(std::move(coeffs))), real_(all_real(coeffs_)) {}

Polynomial::Polynomial(const std::vector<double>& coeffs) {
  std::vector<cx> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = cx(coeffs[i], 0.0);
  coeffs_ = trimmed(std::move(c));
  real_ = true;
}

double Polynomial::max_coeff_abs() const {
  double m = 0.0;
  for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

cx evaluate(const Polynomial& p, cx x) {
  const auto& c = p.coeffs();
  cx y = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) y = y * x + c[i];
  return y;
}

Polynomial reverse(const Polynomial& p) {
  std::vector<cx> c(p.coeffs().rbegin(), p.coeffs().rend());
  return Polynomial(std::move(c));
}

namespace {

// Base case: in-place Horner shift, O(d^2).
std::vector<cx> shift_direct(std::vector<cx> c, cx s) {
  const int n = static_cast<int>(c.size()) - 1;
  for (int j = 0; j < n; ++j)
    for (int k = n - 1; k >= j; --k) c[static_cast<std::size_t>(k)] += s * c[static_cast<std::size_t>(k) + 1];
  return c;
}

// (x+s)^m by repeated squaring of coefficient vectors.
std::vector<cx> binomial_power(cx s, std::size_t m) {
  std::vector<cx> result{cx(1.0, 0.0)};
  std::vector<cx> base{s, cx(1.0, 0.0)};
  while (m > 0) {
    if (m & 1) result = convolve(result, base);
    m >>= 1;
    if (m > 0) base = convolve(base, base);
  }
  return result;
}

std::vector<cx> shift_rec(const std::vector<cx>& c, cx s) {
  if (c.size() <= 32) return shift_direct(c, s);
  const std::size_t m = c.size() / 2;
  std::vector<cx> lo(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<cx> hi(c.begin() + static_cast<std::ptrdiff_t>(m), c.end());
  std::vector<cx> lo_s = shift_rec(lo, s);
  std::vector<cx> hi_s = shift_rec(hi, s);
  std::vector<cx> shifted_hi = convolve(hi_s, binomial_power(s, m));
  std::vector<cx> out(std::max(lo_s.size(), shifted_hi.size()), cx(0.0, 0.0));
  for (std::size_t i = 0; i < lo_s.size(); ++i) out[i] += lo_s[i];
  for (std::size_t i = 0; i < shifted_hi.size(); ++i) out[i] += shifted_hi[i];
  return out;
}

}  // namespace

Polynomial taylor_shift(const Polynomial& p, cx s) {
  std::vector<cx> out = shift_rec(p.coeffs(), s);
  out.resize(p.coeffs().size());
  // The shift cannot change the leading coefficient.
  out.back() = p.leading();
  return Polynomial(std::move(out));
}

Polynomial graeffe_step(const Polynomial& p) {
  const auto& c = p.coeffs();
  const int n = p.degree();
  std::vector<cx> even, odd;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i % 2 == 0)
      even.push_back(c[i]);
    else
      odd.push_back(c[i]);
  }
  std::vector<cx> e2 = convolve(even, even);
  std::vector<cx> o2 = odd.empty() ? std::vector<cx>{} : convolve(odd, odd);
  std::vector<cx> out(static_cast<std::size_t>(n) + 1, cx(0.0, 0.0));
  for (std::size_t i = 0; i < e2.size() && i < out.size(); ++i) out[i] += e2[i];
  for (std::size_t i = 0; i < o2.size() && i + 1 < out.size(); ++i) out[i + 1] -= o2[i];
  if (n % 2 != 0)
    for (auto& z : out) z = -z;
  return Polynomial(std::move(out));
}

std::vector<double> root_radii_estimate(const Polynomial& p, int squarings) {
  if (std::abs(p.coeff(0)) == 0.0)
    throw ZeroConstantTerm("root_radii_estimate: zero constant term, shift first");
  const int n = p.degree();
  Polynomial q = p;
  for (int k = 0; k < squarings; ++k) {
    q = graeffe_step(q);
    double m = q.max_coeff_abs();
    if (m > 0.0 && (m > 1e100 || m < 1e-100)) q = scale(q, cx(1.0 / m, 0.0));
  }
  // Newton polygon of (k, log|c_{n-k}|): upper convex hull slopes estimate the
  // log-radii of the squared polynomial, largest first.
  std::vector<std::pair<double, double>> pts;  // (k, log|c_{n-k}|)
  for (int k = 0; k <= n; ++k) {
    double a = std::abs(q.coeff(n - k));
    if (a > 0.0) pts.emplace_back(static_cast<double>(k), std::log(a));
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // Keep the hull upper-convex: drop b if it lies below segment a-pt.
      if ((b.second - a.second) * (pt.first - a.first) <=
          (pt.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  const double unsquare = 1.0 / static_cast<double>(1LL << squarings);
  // Root squaring turns equal-modulus clusters into multiple roots whose
  // binomial coefficient bumps put spurious vertices on the hull; the bump
  // height per squaring shrinks like 2^-k while genuine separations do not,
  // so adjacent edges closer than this ratio are collapsed into their chord.
  const double merge_gap = 1.4;  // in log units of the squared polynomial
  struct Edge {
    double dk, dy;
    double last_slope;  // slope of the most recently absorbed hull edge
  };
  std::vector<Edge> edges;
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const double dk = hull[e + 1].first - hull[e].first;
    const double dy = hull[e + 1].second - hull[e].second;
    const double slope = dy / dk;
    // Chain-merge: multiplicity bumps step down gently edge to edge, genuine
    // separations jump by at least the (squared) modulus ratio.
    if (!edges.empty() && edges.back().last_slope - slope < merge_gap) {
      edges.back().dk += dk;
      edges.back().dy += dy;
      edges.back().last_slope = slope;
    } else {
      edges.push_back({dk, dy, slope});
    }
  }
  std::vector<double> radii;
  for (const auto& e : edges) {
    const double r = std::exp(e.dy / e.dk * unsquare);
    for (int j = 0; j < static_cast<int>(e.dk + 0.5); ++j) radii.push_back(r);
  }
  while (static_cast<int>(radii.size()) < n) radii.push_back(radii.empty() ? 0.0 : radii.back());
  std::sort(radii.rbegin(), radii.rend());
  return radii;
}

Polynomial random_polynomial(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (auto& x : c) x = rng.uniform(-1.0, 1.0);
  while (std::abs(c.back()) < 1e-3) c.back() = rng.uniform(-1.0, 1.0);
  return Polynomial(c);
}

Polynomial deflate_root(const Polynomial& p, cx root, double tol) {
  const int n = p.degree();
  std::vector<cx> q(static_cast<std::size_t>(n), cx(0.0, 0.0));
  cx carry = p.coeff(n);
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = carry;
    carry = p.coeff(k) + root * carry;
  }
  const double remainder = std::abs(carry);
  if (remainder > tol * p.max_coeff_abs())
    throw LargeResidual("deflate_root: remainder " + std::to_string(remainder) +
                        " exceeds tolerance");
  return Polynomial(std::move(q));
}

Polynomial derivative(const Polynomial& p) {
  if (p.degree() == 0) return Polynomial();
  std::vector<cx> d(static_cast<std::size_t>(p.degree()));
  for (int i = 1; i <= p.degree(); ++i)
    d[static_cast<std::size_t>(i - 1)] = cx(static_cast<double>(i), 0.0) * p.coeff(i);
  return Polynomial(std::move(d));
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
  return Polynomial(convolve(a.coeffs(), b.coeffs()));
}

Polynomial add(const Polynomial& a, const Polynomial& b) {
  std::vector<cx> c(std::max(a.coeffs().size(), b.coeffs().size()), cx(0.0, 0.0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] += b.coeffs()[i];
  return Polynomial(std::move(c));
}

Polynomial sub(const Polynomial& a, const Polynomial& b) {
  std::vector<cx> c(std::max(a.coeffs().size(), b.coeffs().size()), cx(0.0, 0.0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i] += a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) c[i] -= b.coeffs()[i];
  return Polynomial(std::move(c));
}

Polynomial scale(const Polynomial& a, cx factor) {
  std::vector<cx> c = a.coeffs();
  for (auto& z : c) z *= factor;
  return Polynomial(std::move(c));
}

Polynomial from_roots(const std::vector<cx>& roots) {
  std::vector<cx> c{cx(1.0, 0.0)};
  for (cx r : roots) {
    std::vector<cx> next(c.size() + 1, cx(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  // Conjugate-paired root sets give real polynomials; snap roundoff to real.
  double imag_max = 0.0, scale_max = 0.0;
  for (const auto& z : c) {
    imag_max = std::max(imag_max, std::abs(z.imag()));
    scale_max = std::max(scale_max, std::abs(z));
  }
  if (imag_max <= 1e-13 * std::max(1.0, scale_max)) {
    bool paired = true;
    for (cx r : roots) {
      if (std::abs(r.imag()) == 0.0) continue;
      bool found = false;
      for (cx s : roots)
        if (std::abs(s - std::conj(r)) <= 1e-12 * std::max(1.0, std::abs(r))) found = true;
      paired = paired && found;
    }
    if (paired)
      for (auto& z : c) z = cx(z.real(), 0.0);
  }
  return Polynomial(std::move(c));
}

}  // namespace rootfind
