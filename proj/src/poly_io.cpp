#include "rootfind/poly_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rootfind/errors.hpp"

namespace rootfind {

void write_polynomial(std::ostream& os, const Polynomial& p) {
  os << "degree " << p.degree() << "\n";
  char buf[64];
  for (int i = 0; i <= p.degree(); ++i) {
    cx c = p.coeff(i);
    if (p.is_real()) {
      std::snprintf(buf, sizeof(buf), "%.17g", c.real());
      os << buf << "\n";
    } else {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g", c.real(), c.imag());
      os << buf << "\n";
    }
  }
}

Polynomial read_polynomial(std::istream& is) {
  std::string word;
  int n = -1;
  if (!(is >> word) || word != "degree" || !(is >> n) || n < 0)
    throw RootfindError("polynomial file: expected 'degree n' header");
  is >> std::ws;
  std::vector<cx> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n) + 1);
  std::string line;
  while (static_cast<int>(coeffs.size()) <= n && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw RootfindError("polynomial file: bad coefficient line '" + line + "'");
    ls >> im;
    coeffs.emplace_back(re, im);
  }
  if (static_cast<int>(coeffs.size()) != n + 1)
    throw RootfindError("polynomial file: expected " + std::to_string(n + 1) + " coefficients");
  return Polynomial(std::move(coeffs));
}

void save_polynomial(const std::string& path, const Polynomial& p) {
  std::ofstream f(path);
  if (!f) throw RootfindError("cannot open " + path + " for writing");
  write_polynomial(f, p);
}

Polynomial load_polynomial(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw RootfindError("cannot open " + path);
  return read_polynomial(f);
}

}  // namespace rootfind
