#include "rootfind/dense.hpp"

#include <algorithm>
#include <cmath>

#include "rootfind/errors.hpp"

namespace rootfind {

DenseMatrix DenseMatrix::from_entries(int rows, int cols, std::vector<cx> entries) {
  if (static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) != entries.size())
    throw DimensionMismatch("from_entries: rows*cols != entries.size()");
  DenseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.a_ = std::move(entries);
  if (!m.all_finite()) throw Overflow("from_entries: non-finite entry");
  return m;
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = cx(1.0, 0.0);
  return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<cx>& d) {
  DenseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

DenseMatrix DenseMatrix::column(int j) const {
  DenseMatrix c(rows_, 1);
  for (int i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

void DenseMatrix::set_column(int j, const std::vector<cx>& v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<std::size_t>(i)];
}

std::vector<cx> DenseMatrix::column_vector(int j) const {
  std::vector<cx> v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, j);
  return v;
}

bool DenseMatrix::all_finite() const {
  for (const auto& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    cx* ci = &c.data()[static_cast<std::size_t>(i) * m];
    for (int l = 0; l < k; ++l) {
      const cx ail = a(i, l);
      if (ail == cx(0.0, 0.0)) continue;
      const cx* bl = &b.data()[static_cast<std::size_t>(l) * m];
      for (int j = 0; j < m; ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix add: shape mismatch");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sub: shape mismatch");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

DenseMatrix operator*(cx s, const DenseMatrix& a) {
  DenseMatrix c = a;
  for (auto& z : c.data()) z *= s;
  return c;
}

DenseMatrix conj_transpose(const DenseMatrix& a) {
  DenseMatrix c(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

std::vector<cx> matvec(const DenseMatrix& a, const std::vector<cx>& v) {
  if (a.cols() != static_cast<int>(v.size())) throw DimensionMismatch("matvec: size mismatch");
  std::vector<cx> w(static_cast<std::size_t>(a.rows()), cx(0.0, 0.0));
  for (int i = 0; i < a.rows(); ++i) {
    cx s(0.0, 0.0);
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(i)] = s;
  }
  return w;
}

cx trace(const DenseMatrix& a) {
  cx t(0.0, 0.0);
  for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

void add_scaled_identity(DenseMatrix& a, cx s) {
  for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) a(i, i) += s;
}

Norms norms(const DenseMatrix& m) {
  Norms n{0.0, 0.0, 0.0};
  std::vector<double> colsum(static_cast<std::size_t>(m.cols()), 0.0);
  double frob2 = 0.0;
  for (int i = 0; i < m.rows(); ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      rowsum += a;
      colsum[static_cast<std::size_t>(j)] += a;
      frob2 += a * a;
    }
    n.inf = std::max(n.inf, rowsum);
  }
  for (double c : colsum) n.one = std::max(n.one, c);
  n.frob = std::sqrt(frob2);
  return n;
}

namespace {

struct LuFactors {
  DenseMatrix lu;
  std::vector<int> piv;
};

LuFactors lu_factor(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("lu: matrix not square");
  const int n = a.rows();
  LuFactors f{a, std::vector<int>(static_cast<std::size_t>(n))};
  std::vector<double> scale(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s = std::max(s, std::abs(a(i, j)));
    scale[static_cast<std::size_t>(i)] = s;
  }
  DenseMatrix& m = f.lu;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(m(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(m(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    f.piv[static_cast<std::size_t>(k)] = piv;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(scale[static_cast<std::size_t>(k)], scale[static_cast<std::size_t>(piv)]);
    }
    if (best < 1e-14 * std::max(scale[static_cast<std::size_t>(k)], 1e-300))
      throw SingularMatrix("lu: pivot below threshold at column " + std::to_string(k));
    const cx inv_p = cx(1.0, 0.0) / m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cx l = m(i, k) * inv_p;
      m(i, k) = l;
      if (l == cx(0.0, 0.0)) continue;
      const cx* rk = &m.data()[static_cast<std::size_t>(k) * n];
      cx* ri = &m.data()[static_cast<std::size_t>(i) * n];
      for (int j = k + 1; j < n; ++j) ri[j] -= l * rk[j];
    }
  }
  return f;
}

DenseMatrix lu_apply(const LuFactors& f, const DenseMatrix& b) {
  const int n = f.lu.rows();
  if (b.rows() != n) throw DimensionMismatch("lu_solve: rhs rows mismatch");
  DenseMatrix x = b;
  const int m = b.cols();
  // x <- P b; the stored L lives in the fully pivoted row order.
  for (int k = 0; k < n; ++k) {
    const int p = f.piv[static_cast<std::size_t>(k)];
    if (p != k)
      for (int j = 0; j < m; ++j) std::swap(x(k, j), x(p, j));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) {
      const cx l = f.lu(i, k);
      if (l == cx(0.0, 0.0)) continue;
      for (int j = 0; j < m; ++j) x(i, j) -= l * x(k, j);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    const cx inv_d = cx(1.0, 0.0) / f.lu(k, k);
    for (int j = 0; j < m; ++j) x(k, j) *= inv_d;
    for (int i = 0; i < k; ++i) {
      const cx u = f.lu(i, k);
      if (u == cx(0.0, 0.0)) continue;
      for (int j = 0; j < m; ++j) x(i, j) -= u * x(k, j);
    }
  }
  return x;
}

}  // namespace

DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b) {
  return lu_apply(lu_factor(a), b);
}

DenseMatrix lu_invert(const DenseMatrix& a) {
  return lu_apply(lu_factor(a), DenseMatrix::identity(a.rows()));
}

namespace {

// Householder QR core shared by qr() and rrqr(). Returns thin Q (m x k) and
// square R (k x k), k = min(m, n_cols), with positive real diagonal.
void householder_qr(DenseMatrix a, bool pivot, double rank_tol, QRFactors& out, int* rank_out) {
  const int m = a.rows(), n = a.cols();
  const int k = std::min(m, n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;
  std::vector<std::vector<cx>> reflectors;
  std::vector<double> colnorm2(static_cast<std::size_t>(n), 0.0);
  if (pivot) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) s += std::norm(a(i, j));
      colnorm2[static_cast<std::size_t>(j)] = s;
    }
  }

  for (int j = 0; j < k; ++j) {
    if (pivot) {
      int best = j;
      for (int l = j + 1; l < n; ++l)
        if (colnorm2[static_cast<std::size_t>(l)] > colnorm2[static_cast<std::size_t>(best)])
          best = l;
      if (best != j) {
        for (int i = 0; i < m; ++i) std::swap(a(i, j), a(i, best));
        std::swap(colnorm2[static_cast<std::size_t>(j)], colnorm2[static_cast<std::size_t>(best)]);
        std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(best)]);
      }
    }
    // Build reflector annihilating a(j+1:m, j).
    double xnorm = 0.0;
    for (int i = j; i < m; ++i) xnorm += std::norm(a(i, j));
    xnorm = std::sqrt(xnorm);
    std::vector<cx> v(static_cast<std::size_t>(m - j), cx(0.0, 0.0));
    if (xnorm > 0.0) {
      cx x0 = a(j, j);
      cx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cx(1.0, 0.0);
      cx alpha = -phase * xnorm;
      for (int i = j; i < m; ++i) v[static_cast<std::size_t>(i - j)] = a(i, j);
      v[0] -= alpha;
      double vnorm2 = 0.0;
      for (const auto& z : v) vnorm2 += std::norm(z);
      if (vnorm2 > 0.0) {
        const double inv = 2.0 / vnorm2;
        for (int c = j; c < n; ++c) {
          cx dot(0.0, 0.0);
          for (int i = j; i < m; ++i) dot += std::conj(v[static_cast<std::size_t>(i - j)]) * a(i, c);
          dot *= inv;
          for (int i = j; i < m; ++i) a(i, c) -= dot * v[static_cast<std::size_t>(i - j)];
        }
      }
      a(j, j) = alpha;
      for (int i = j + 1; i < m; ++i) a(i, j) = cx(0.0, 0.0);
    }
    reflectors.push_back(std::move(v));
    if (pivot)
      for (int l = j + 1; l < n; ++l)
        colnorm2[static_cast<std::size_t>(l)] -= std::norm(a(j, l));
  }

  // Thin Q by applying reflectors to the leading k identity columns.
  DenseMatrix q(m, k);
  for (int j = 0; j < k; ++j) q(j, j) = cx(1.0, 0.0);
  for (int j = k - 1; j >= 0; --j) {
    const auto& v = reflectors[static_cast<std::size_t>(j)];
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;
    const double inv = 2.0 / vnorm2;
    for (int c = 0; c < k; ++c) {
      cx dot(0.0, 0.0);
      for (int i = j; i < m; ++i) dot += std::conj(v[static_cast<std::size_t>(i - j)]) * q(i, c);
      dot *= inv;
      for (int i = j; i < m; ++i) q(i, c) -= dot * v[static_cast<std::size_t>(i - j)];
    }
  }

  // Phase-fix: rotate so every diagonal entry of R is real nonnegative.
  DenseMatrix r(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = a(i, j);
  for (int i = 0; i < k; ++i) {
    const cx d = r(i, i);
    if (std::abs(d) == 0.0) continue;
    const cx phase = d / std::abs(d);
    const cx conj_phase = std::conj(phase);
    for (int j = 0; j < n; ++j) r(i, j) *= conj_phase;
    r(i, i) = cx(std::abs(d), 0.0);  // exactly real by convention
    for (int row = 0; row < m; ++row) q(row, i) *= phase;
  }

  if (rank_out) {
    const double r00 = std::abs(r(0, 0));
    int rank = 0;
    for (int i = 0; i < k; ++i)
      if (std::abs(r(i, i)) >= rank_tol * r00 && r00 > 0.0) rank = i + 1;
    *rank_out = rank;
  }
  out.q = std::move(q);
  out.r = std::move(r);
  out.perm = std::move(perm);
}

}  // namespace

QRFactors qr(const DenseMatrix& m) {
  QRFactors f;
  householder_qr(m, false, 0.0, f, nullptr);
  const int k = std::min(m.rows(), m.cols());
  const double r00 = std::abs(f.r(0, 0));
  for (int i = 0; i < k; ++i)
    if (std::abs(f.r(i, i)) < 1e-12 * r00)
      throw RankDeficient("qr: r(" + std::to_string(i) + "," + std::to_string(i) + ") below tolerance");
  return f;
}

std::pair<QRFactors, int> rrqr(const DenseMatrix& m, double tol) {
  QRFactors f;
  int rank = 0;
  householder_qr(m, true, tol, f, &rank);
  return {std::move(f), rank};
}

std::vector<std::pair<cx, double>> gerschgorin_discs(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("gerschgorin: not square");
  std::vector<std::pair<cx, double>> discs;
  discs.reserve(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < m.cols(); ++j)
      if (j != i) r += std::abs(m(i, j));
    discs.emplace_back(m(i, i), r);
  }
  return discs;
}

namespace {

std::pair<cx, cx> eig2x2(cx a, cx b, cx c, cx d) {
  const cx tr = a + d;
  const cx det = a * d - b * c;
  cx disc = std::sqrt(tr * tr - 4.0 * det);
  // Pick the sign avoiding cancellation in tr +- disc.
  if (std::real(std::conj(tr) * disc) < 0.0) disc = -disc;
  const cx l1 = 0.5 * (tr + disc);
  const cx l2 = (std::abs(l1) > 0.0) ? det / l1 : 0.5 * (tr - disc);
  return {l1, l2};
}

}  // namespace

std::vector<cx> small_eig(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("small_eig: not square");
  const int n = m.rows();
  if (n > 64) throw DimensionMismatch("small_eig: dimension > 64; reduce first");
  if (n == 0) return {};
  if (n == 1) return {m(0, 0)};
  if (n == 2) {
    auto [l1, l2] = eig2x2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    return {l1, l2};
  }

  // Hessenberg reduction by Householder similarity.
  DenseMatrix h = m;
  for (int j = 0; j < n - 2; ++j) {
    double xnorm = 0.0;
    for (int i = j + 1; i < n; ++i) xnorm += std::norm(h(i, j));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cx x0 = h(j + 1, j);
    cx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cx(1.0, 0.0);
    cx alpha = -phase * xnorm;
    std::vector<cx> v(static_cast<std::size_t>(n - j - 1));
    for (int i = j + 1; i < n; ++i) v[static_cast<std::size_t>(i - j - 1)] = h(i, j);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;
    const double inv = 2.0 / vnorm2;
    for (int c = j; c < n; ++c) {
      cx dot(0.0, 0.0);
      for (int i = j + 1; i < n; ++i)
        dot += std::conj(v[static_cast<std::size_t>(i - j - 1)]) * h(i, c);
      dot *= inv;
      for (int i = j + 1; i < n; ++i) h(i, c) -= dot * v[static_cast<std::size_t>(i - j - 1)];
    }
    for (int r = 0; r < n; ++r) {
      cx dot(0.0, 0.0);
      for (int i = j + 1; i < n; ++i) dot += h(r, i) * v[static_cast<std::size_t>(i - j - 1)];
      dot *= inv;
      for (int i = j + 1; i < n; ++i) h(r, i) -= dot * std::conj(v[static_cast<std::size_t>(i - j - 1)]);
    }
  }

  // Shifted QR on the Hessenberg form with Givens rotations.
  std::vector<cx> eig(static_cast<std::size_t>(n));
  int hi = n - 1;
  int sweeps = 0;
  const int max_sweeps = 30 * n;
  int stall = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    // Deflation scan.
    int lo = hi;
    while (lo > 0) {
      const double off = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (off <= 1e-15 * diag + 1e-300) {
        h(lo, lo - 1) = cx(0.0, 0.0);
        break;
      }
      --lo;
    }
    if (std::abs(h(hi, hi - 1)) == 0.0) {
      eig[static_cast<std::size_t>(hi)] = h(hi, hi);
      --hi;
      stall = 0;
      continue;
    }
    if (hi - lo == 1) {
      auto [l1, l2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      eig[static_cast<std::size_t>(hi)] = l1;
      eig[static_cast<std::size_t>(lo)] = l2;
      hi = lo - 1;
      stall = 0;
      continue;
    }
    if (++sweeps > max_sweeps) throw NoConvergence("small_eig: QR iteration did not converge");

    // Wilkinson shift from the trailing 2x2; exceptional shift when stalled.
    cx shift;
    if (++stall % 12 == 0) {
      shift = cx(std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2)), 0.0);
    } else {
      auto [l1, l2] = eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
    }

    // QR step: H - sI = G_1..G_k R, then RQ + sI via Givens.
    std::vector<std::pair<cx, cx>> rot(static_cast<std::size_t>(hi - lo));
    for (int i = lo; i <= hi; ++i) h(i, i) -= shift;
    for (int i = lo; i < hi; ++i) {
      cx a = h(i, i), b = h(i + 1, i);
      double r = std::sqrt(std::norm(a) + std::norm(b));
      cx cs, sn;
      if (r == 0.0) {
        cs = cx(1.0, 0.0);
        sn = cx(0.0, 0.0);
      } else {
        cs = a / r;
        sn = b / r;
      }
      rot[static_cast<std::size_t>(i - lo)] = {cs, sn};
      for (int j = i; j <= hi; ++j) {
        cx t1 = h(i, j), t2 = h(i + 1, j);
        h(i, j) = std::conj(cs) * t1 + std::conj(sn) * t2;
        h(i + 1, j) = -sn * t1 + cs * t2;
      }
    }
    for (int i = lo; i < hi; ++i) {
      const auto& [cs, sn] = rot[static_cast<std::size_t>(i - lo)];
      const int jmax = std::min(i + 2, hi);
      for (int j = lo; j <= jmax; ++j) {
        cx t1 = h(j, i), t2 = h(j, i + 1);
        h(j, i) = t1 * cs + t2 * sn;
        h(j, i + 1) = -t1 * std::conj(sn) + t2 * std::conj(cs);
      }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return eig;
}

DenseMatrix companion_matrix(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw DimensionMismatch("companion_matrix: degree must be >= 1");
  DenseMatrix c(n, n);
  const cx lead = p.leading();
  for (int i = 1; i < n; ++i) c(i, i - 1) = cx(1.0, 0.0);
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i) / lead;
  return c;
}

DenseMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  DenseMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cx(rng.gaussian(), 0.0);
  return g;
}

DenseMatrix gaussian_toeplitz(int rows, int cols, Rng& rng) {
  std::vector<double> diag_vals(static_cast<std::size_t>(rows + cols - 1));
  for (auto& v : diag_vals) v = rng.gaussian();
  DenseMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      g(i, j) = cx(diag_vals[static_cast<std::size_t>(i - j + cols - 1)], 0.0);
  return g;
}

}  // namespace rootfind
