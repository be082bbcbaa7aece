#ifndef ROOTFIND_POLY_IO_HPP
#define ROOTFIND_POLY_IO_HPP

#include <iosfwd>
#include <string>

#include "rootfind/polynomial.hpp"

namespace rootfind {

// Text format: one line "degree n", then n+1 coefficient lines "re im"
// (the imaginary column is omitted for real polynomials), lowest degree first.
void write_polynomial(std::ostream& os, const Polynomial& p);
Polynomial read_polynomial(std::istream& is);

void save_polynomial(const std::string& path, const Polynomial& p);
Polynomial load_polynomial(const std::string& path);

}  // namespace rootfind

#endif
