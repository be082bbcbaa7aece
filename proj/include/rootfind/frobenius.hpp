#ifndef ROOTFIND_FROBENIUS_HPP
#define ROOTFIND_FROBENIUS_HPP

#include <memory>
#include <vector>

#include "rootfind/dense.hpp"
#include "rootfind/polynomial.hpp"

namespace rootfind {

// Shared context for arithmetic modulo a fixed real polynomial p: elements of
// the matrix algebra generated by the companion matrix of p are represented as
// residue polynomials of degree < deg(p). Reduction uses the reverse-and-
// Newton-inverse fast division, so multiplication costs O(n log n).
class FrobeniusAlgebra {
 public:
  explicit FrobeniusAlgebra(Polynomial modulus);

  const Polynomial& modulus() const { return modulus_; }
  int n() const { return modulus_.degree(); }

  // q mod modulus.
  Polynomial reduce(const Polynomial& q) const;

 private:
  void ensure_series() const;

  Polynomial modulus_;
  mutable std::vector<cx> inv_rev_;  // power-series inverse of the reversed modulus
  mutable bool series_ready_ = false;
  mutable bool fast_ok_ = false;  // FFT quotient path is accurate for this modulus
};

using AlgebraPtr = std::shared_ptr<const FrobeniusAlgebra>;

AlgebraPtr make_algebra(Polynomial modulus);

class FrobeniusElement {
 public:
  FrobeniusElement(AlgebraPtr algebra, Polynomial residue);

  const Polynomial& residue() const { return residue_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  int n() const { return algebra_->n(); }

 private:
  AlgebraPtr algebra_;
  Polynomial residue_;
};

// Canonical embedding q -> q(C_p) mod p.
FrobeniusElement from_poly(const Polynomial& q, const AlgebraPtr& algebra);
FrobeniusElement element_one(const AlgebraPtr& algebra);
FrobeniusElement element_x(const AlgebraPtr& algebra);
FrobeniusElement element_scalar(cx s, const AlgebraPtr& algebra);

FrobeniusElement mul(const FrobeniusElement& a, const FrobeniusElement& b);
FrobeniusElement add(const FrobeniusElement& a, const FrobeniusElement& b);
FrobeniusElement sub(const FrobeniusElement& a, const FrobeniusElement& b);
FrobeniusElement add_scalar(const FrobeniusElement& a, cx s);
FrobeniusElement scale(const FrobeniusElement& a, cx s);

// Multiplicative inverse via the extended Euclidean scheme over complex
// coefficients. Throws SingularElement when the gcd with the modulus is not a
// (numerically nonzero) constant, i.e. the element vanishes at some root.
FrobeniusElement invert(const FrobeniusElement& a);

// Norm used for the squaring scale factors: the infinity norm of the dense
// image for n <= 512, the coefficient 1-norm as an upper-bound proxy above.
double element_norm(const FrobeniusElement& a);

struct PowerResult {
  FrobeniusElement value;
  std::vector<double> scale_log;  // log of each applied factor a_h
};

// h repeated squarings; when scaled, each square is multiplied by
// a_h = 1/norm(before squaring)^2 and log a_h is recorded so the unscaled
// power can be recovered. Throws Overflow on non-finite intermediates.
PowerResult power_squaring(const FrobeniusElement& a, int h, bool scaled);

// Total log factor between value and the true power: value = exp(s) * a^(2^h).
double power_unscale_log(const PowerResult& pr);

// The unit-circle map element (a(x+t)+i) * (a(x+t)-i)^{-1} mod p.
FrobeniusElement cayley(const AlgebraPtr& algebra, double a_scale, double t_shift);

// Matrix-vector product with the dense image, computed structurally.
std::vector<cx> apply_to_vector(const FrobeniusElement& a, const std::vector<cx>& v);

// n x n dense image (residue evaluated at the companion matrix).
DenseMatrix to_dense(const FrobeniusElement& a);

// Applies the element to every column of a dense block.
DenseMatrix apply_to_block(const FrobeniusElement& a, const DenseMatrix& g);

}  // namespace rootfind

#endif
