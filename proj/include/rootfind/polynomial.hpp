#ifndef ROOTFIND_POLYNOMIAL_HPP
#define ROOTFIND_POLYNOMIAL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "rootfind/fft.hpp"

namespace rootfind {

// Univariate polynomial, constant term first. Trailing zero coefficients are
// trimmed on construction; a polynomial whose coefficients all have exactly
// zero imaginary part is flagged real.
class Polynomial {
 public:
  Polynomial() : coeffs_{cx(0.0, 0.0)}, real_(true) {}
  explicit Polynomial(std::vector<cx> coeffs);
  explicit Polynomial(const std::vector<double>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_real() const { return real_; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == cx(0.0, 0.0); }
  const std::vector<cx>& coeffs() const { return coeffs_; }
  cx coeff(int i) const {
    return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : cx(0.0, 0.0);
  }
  cx leading() const { return coeffs_.back(); }

  double max_coeff_abs() const;

 private:
  std::vector<cx> coeffs_;
  bool real_;
};

cx evaluate(const Polynomial& p, cx x);

// x^n p(1/x): coefficient reversal; roots map to their reciprocals.
Polynomial reverse(const Polynomial& p);

// q(x) = p(x + s).
Polynomial taylor_shift(const Polynomial& p, cx s);

// One root-squaring step: same degree, roots squared.
Polynomial graeffe_step(const Polynomial& p);

// Estimates of all root moduli, nonincreasing. `squarings` root-squaring steps
// sharpen the coefficient-based estimate. Throws ZeroConstantTerm if p(0)=0.
std::vector<double> root_radii_estimate(const Polynomial& p, int squarings);

// Real coefficients i.i.d. uniform on [-1,1]; the leading coefficient is
// resampled until its magnitude is at least 1e-3.
Polynomial random_polynomial(int n, std::uint64_t seed);

// Synthetic division by (x - root). Throws LargeResidual when the remainder
// exceeds tol * max|coeff|.
Polynomial deflate_root(const Polynomial& p, cx root, double tol = 1e-6);

Polynomial derivative(const Polynomial& p);

Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial scale(const Polynomial& a, cx factor);

// Monic polynomial with the given roots; handy for building test inputs.
Polynomial from_roots(const std::vector<cx>& roots);

}  // namespace rootfind

#endif
