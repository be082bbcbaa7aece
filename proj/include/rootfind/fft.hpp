#ifndef ROOTFIND_FFT_HPP
#define ROOTFIND_FFT_HPP

#include <complex>
#include <vector>

namespace rootfind {

using cx = std::complex<double>;

// In-place radix-2 FFT; size must be a power of two. inverse=true applies the
// conjugate transform including the 1/n factor.
void fft(std::vector<cx>& a, bool inverse);

std::size_t next_pow2(std::size_t n);

// Linear convolution of a and b (polynomial product of the coefficient
// sequences). Result size a.size()+b.size()-1.
std::vector<cx> convolve(const std::vector<cx>& a, const std::vector<cx>& b);

}  // namespace rootfind

#endif
