#ifndef ROOTFIND_DENSE_HPP
#define ROOTFIND_DENSE_HPP

#include <complex>
#include <utility>
#include <vector>

#include "rootfind/polynomial.hpp"
#include "rootfind/rng.hpp"

namespace rootfind {

// Row-major dense complex matrix.
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), cx(0.0, 0.0)) {}

  // Validates that every entry is finite.
  static DenseMatrix from_entries(int rows, int cols, std::vector<cx> entries);
  static DenseMatrix identity(int n);
  static DenseMatrix diagonal(const std::vector<cx>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<cx>& data() const { return a_; }
  std::vector<cx>& data() { return a_; }

  DenseMatrix column(int j) const;
  void set_column(int j, const std::vector<cx>& v);
  std::vector<cx> column_vector(int j) const;

  bool all_finite() const;

 private:
  int rows_, cols_;
  std::vector<cx> a_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(cx s, const DenseMatrix& a);
DenseMatrix conj_transpose(const DenseMatrix& a);
std::vector<cx> matvec(const DenseMatrix& a, const std::vector<cx>& v);
cx trace(const DenseMatrix& a);

// Adds s to the diagonal in place.
void add_scaled_identity(DenseMatrix& a, cx s);

struct Norms {
  double one;
  double inf;
  double frob;
};
Norms norms(const DenseMatrix& m);

// Solves A X = B with partially pivoted LU. Throws SingularMatrix when a pivot
// falls below 1e-14 times the row scale.
DenseMatrix lu_solve(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix lu_invert(const DenseMatrix& a);

struct QRFactors {
  DenseMatrix q;         // orthonormal columns, rows(a) x min(rows, cols)
  DenseMatrix r;         // upper triangular with positive real diagonal
  std::vector<int> perm; // column permutation, identity for plain qr
};

// Householder QR with the diagonal phase fixed positive real, which makes the
// factorization unique and reruns bitwise identical. Throws RankDeficient if
// |r_jj| < 1e-12 |r_11|.
QRFactors qr(const DenseMatrix& m);

// Column-pivoted QR; numerical_rank = max k with |r_kk| >= tol |r_11|.
std::pair<QRFactors, int> rrqr(const DenseMatrix& m, double tol = 1e-8);

// (center, radius) of every row disc; the spectrum lies in their union.
std::vector<std::pair<cx, double>> gerschgorin_discs(const DenseMatrix& m);

// All eigenvalues of a small matrix (dimension <= 64) by Hessenberg reduction
// and shifted QR; closed form for dimension <= 2.
std::vector<cx> small_eig(const DenseMatrix& m);

// Dense companion matrix of p (unit subdiagonal, -p_i/p_n last column).
DenseMatrix companion_matrix(const Polynomial& p);

DenseMatrix gaussian_matrix(int rows, int cols, Rng& rng);
// Toeplitz matrix with i.i.d. Gaussian first row and column.
DenseMatrix gaussian_toeplitz(int rows, int cols, Rng& rng);

}  // namespace rootfind

#endif
