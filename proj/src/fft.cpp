#include "rootfind/fft.hpp"

#include <cmath>

namespace rootfind {

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void fft(std::vector<cx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double pi = 3.14159265358979323846264338327950288;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
    const std::size_t half = len >> 1;
    // Twiddles are computed from the angle directly; recursive products lose
    // accuracy over long transforms.
    std::vector<cx> w(half);
    for (std::size_t j = 0; j < half; ++j)
      w[j] = std::polar(1.0, ang * static_cast<double>(j));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cx u = a[i + j];
        cx v = a[i + j + half] * w[j];
        a[i + j] = u + v;
        a[i + j + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& x : a) x *= inv_n;
  }
}

std::vector<cx> convolve(const std::vector<cx>& a, const std::vector<cx>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  // Small products are cheaper (and a touch more accurate) done directly.
  if (a.size() * b.size() <= 1024) {
    std::vector<cx> r(out, cx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }
  const std::size_t m = next_pow2(out);
  std::vector<cx> fa(a.begin(), a.end());
  std::vector<cx> fb(b.begin(), b.end());
  fa.resize(m);
  fb.resize(m);
  fft(fa, false);
  fft(fb, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft(fa, true);
  fa.resize(out);
  return fa;
}

}  // namespace rootfind
