#ifndef MODLIFT_MONOMIAL_HPP
#define MODLIFT_MONOMIAL_HPP

#include <numeric>
#include <string>
#include <vector>

#include <modlift/errors.hpp>

namespace modlift {

enum class Ordering { lex, deglex, degrevlex };

std::string ordering_name(Ordering o);
Ordering ordering_from_name(const std::string& name);  // throws Error

// Exponent vector, one entry per ring variable.
struct Monomial {
  std::vector<unsigned> e;

  explicit Monomial(std::size_t nvars = 0) : e(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps) : e(std::move(exps)) {}

  std::size_t nvars() const { return e.size(); }
  unsigned deg() const { return std::accumulate(e.begin(), e.end(), 0u); }
  bool is_one() const {
    for (unsigned x : e)
      if (x) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

// -1, 0, +1 for m1 < m2, m1 == m2, m1 > m2 under ord.
inline int compare(const Monomial& m1, const Monomial& m2, Ordering ord) {
  if (m1.nvars() != m2.nvars())
    throw LengthMismatchError("monomials with different variable counts");
  auto lex = [&]() {
    for (std::size_t i = 0; i < m1.nvars(); ++i)
      if (m1.e[i] != m2.e[i]) return m1.e[i] > m2.e[i] ? 1 : -1;
    return 0;
  };
  switch (ord) {
    case Ordering::lex:
      return lex();
    case Ordering::deglex: {
      unsigned d1 = m1.deg(), d2 = m2.deg();
      if (d1 != d2) return d1 > d2 ? 1 : -1;
      return lex();
    }
    case Ordering::degrevlex: {
      unsigned d1 = m1.deg(), d2 = m2.deg();
      if (d1 != d2) return d1 > d2 ? 1 : -1;
      // last differing exponent: the larger one is the smaller monomial
      for (std::size_t i = m1.nvars(); i-- > 0;)
        if (m1.e[i] != m2.e[i]) return m1.e[i] > m2.e[i] ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

inline Monomial mul(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw LengthMismatchError("monomial mul");
  Monomial r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

inline bool divides(const Monomial& d, const Monomial& m) {
  if (d.nvars() != m.nvars()) throw LengthMismatchError("monomial divides");
  for (std::size_t i = 0; i < d.e.size(); ++i)
    if (d.e[i] > m.e[i]) return false;
  return true;
}

// m / d; caller guarantees divisibility
inline Monomial div(const Monomial& m, const Monomial& d) {
  Monomial r = m;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] -= d.e[i];
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw LengthMismatchError("monomial lcm");
  Monomial r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i)
    if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
  return r;
}

// stable text key, independent of variable names: "2,0,1"
inline std::string mono_key(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(m.e[i]);
  }
  return s;
}

Monomial mono_from_key(const std::string& key);

}  // namespace modlift

#endif  // MODLIFT_MONOMIAL_HPP
