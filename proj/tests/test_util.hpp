#ifndef ROOTFIND_TEST_UTIL_HPP
#define ROOTFIND_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "rootfind/dense.hpp"
#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"

namespace testutil {

using rootfind::cx;
using rootfind::DenseMatrix;

// Max relative mismatch under greedy nearest assignment; infinity if the
// multisets have different sizes.
inline double multiset_distance(std::vector<cx> a, std::vector<cx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (cx x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bj = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]) / std::max(1.0, std::abs(b[j]));
      if (d < best) {
        best = d;
        bj = j;
      }
    }
    if (bj == b.size()) return std::numeric_limits<double>::infinity();
    used[bj] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

inline double entrywise_rel_error(const DenseMatrix& got, const DenseMatrix& want) {
  double scale = 0.0;
  for (const auto& z : want.data()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) scale = 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < got.data().size(); ++i)
    worst = std::max(worst, std::abs(got.data()[i] - want.data()[i]) / scale);
  return worst;
}

// Random diagonalizable matrix with prescribed eigenvalues: V D V^-1 for a
// well-conditioned random V (identity plus a modest random perturbation).
inline DenseMatrix with_spectrum(const std::vector<cx>& eigenvalues, rootfind::Rng& rng) {
  const int n = static_cast<int>(eigenvalues.size());
  DenseMatrix v = DenseMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) += cx(0.3 * rng.gaussian(), 0.3 * rng.gaussian());
  return v * DenseMatrix::diagonal(eigenvalues) * rootfind::lu_invert(v);
}

// Largest principal angle between the column spans of two orthonormal bases,
// via the complement projection so small angles keep full precision.
inline double principal_angle(const DenseMatrix& qa, const DenseMatrix& qb) {
  DenseMatrix resid = qb - qa * (rootfind::conj_transpose(qa) * qb);
  DenseMatrix gram = rootfind::conj_transpose(resid) * resid;
  double smax2 = 0.0;
  for (cx ev : rootfind::small_eig(gram)) smax2 = std::max(smax2, ev.real());
  return std::asin(std::min(1.0, std::sqrt(std::max(0.0, smax2))));
}

// Random real polynomial whose root moduli stay near the unit circle, so the
// power basis of its companion matrix has modest growth and dense-image
// comparisons stay well conditioned.
inline rootfind::Polynomial well_scaled_random_polynomial(int n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 104729) {
    rootfind::Polynomial p = rootfind::random_polynomial(n, s);
    if (std::abs(p.coeff(0)) == 0.0) continue;
    std::vector<double> radii = rootfind::root_radii_estimate(p, 4);
    if (radii.front() <= 1.4 && radii.back() >= 0.7) return p;
  }
}

inline DenseMatrix orthonormal_basis_of(const std::vector<std::vector<cx>>& columns) {
  const int n = static_cast<int>(columns.front().size());
  DenseMatrix m(n, static_cast<int>(columns.size()));
  for (int j = 0; j < m.cols(); ++j) m.set_column(j, columns[static_cast<std::size_t>(j)]);
  rootfind::QRFactors f = rootfind::qr(m);
  DenseMatrix q(n, m.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.cols(); ++j) q(i, j) = f.q(i, j);
  return q;
}

}  // namespace testutil

#endif
