#ifndef MODLIFT_POLY_IO_HPP
#define MODLIFT_POLY_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <modlift/poly.hpp>

namespace modlift {

// Named variables plus the monomial ordering; variable order is declaration
// order, printing uses the same order.
struct Ring {
  std::vector<std::string> vars;
  Ordering order = Ordering::degrevlex;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.vars == b.vars && a.order == b.order;
  }
};

// Grammar: terms joined by +/-; term = [coefficient][*] factors;
// factor = var[^exp]; coefficient = integer or integer/integer.
// Whitespace is insignificant. Throws SyntaxError / UnknownVariableError.
Poly<BigRat> parse_poly(const std::string& text, const Ring& ring);

std::string poly_str(const Poly<BigRat>& f, const Ring& ring);
std::string poly_str(const Poly<Zp>& f, const Ring& ring);
std::string mono_str(const Monomial& m, const std::vector<std::string>& vars);

// Ideal file: header `ring: x,y,z; order: degrevlex; field: Q` followed by
// one polynomial per line. field is Q or Z/<prime>; zero lines are dropped.
struct IdealFile {
  Ring ring;
  std::uint64_t char_p = 0;  // 0 means Q
  std::vector<Poly<BigRat>> gens;
};

IdealFile load_ideal(std::istream& in);
IdealFile load_ideal_file(const std::string& path);

void write_basis(std::ostream& out, const Ring& ring, std::uint64_t char_p,
                 const std::vector<Poly<BigRat>>& polys);
std::string basis_str(const Ring& ring, std::uint64_t char_p,
                      const std::vector<Poly<BigRat>>& polys);

}  // namespace modlift

#endif  // MODLIFT_POLY_IO_HPP
