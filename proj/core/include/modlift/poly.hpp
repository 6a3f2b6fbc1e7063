#ifndef MODLIFT_POLY_HPP
#define MODLIFT_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include <modlift/bigint.hpp>
#include <modlift/monomial.hpp>

namespace modlift {

// Element of the prime field Z/p for word-size p. Each value carries its
// modulus; mixing moduli throws FieldMismatchError.
struct Zp {
  std::uint64_t v;
  std::uint64_t p;

  Zp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

  bool is_zero() const { return v == 0; }

  friend Zp operator+(const Zp& a, const Zp& b) {
    a.match(b);
    std::uint64_t s = a.v + b.v;  // p < 2^63, no overflow
    return Zp(s >= a.p ? s - a.p : s, a.p);
  }
  friend Zp operator-(const Zp& a, const Zp& b) {
    a.match(b);
    return Zp(a.v >= b.v ? a.v - b.v : a.v + a.p - b.v, a.p);
  }
  friend Zp operator*(const Zp& a, const Zp& b) {
    a.match(b);
    return Zp(static_cast<std::uint64_t>(
                  (static_cast<unsigned __int128>(a.v) * b.v) % a.p),
              a.p);
  }
  Zp operator-() const { return Zp(v == 0 ? 0 : p - v, p); }

  Zp inverse() const;

  friend bool operator==(const Zp& a, const Zp& b) { return a.v == b.v && a.p == b.p; }
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

  void match(const Zp& o) const {
    if (p != o.p)
      throw FieldMismatchError("Z/" + std::to_string(p) + " vs Z/" + std::to_string(o.p));
  }
};

inline Zp Zp::inverse() const {
  if (v == 0) throw NotInvertibleError("inverse of 0 in Z/" + std::to_string(p));
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(v);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw NotInvertibleError("non-unit in Z/" + std::to_string(p));
  return Zp(static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t), p);
}

inline bool coeff_is_zero(const BigRat& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Zp& c) { return c.is_zero(); }

template <class K>
struct Term {
  K coeff;
  Monomial mono;
};

// Sparse polynomial: terms strictly descending under the ambient ordering,
// no zero coefficients, zero polynomial = empty list. The ordering is a
// property of the enclosing basis and is passed to the operations.
template <class K>
class Poly {
 public:
  Poly() = default;

  static Poly from_terms(std::vector<Term<K>> terms, Ordering ord) {
    std::sort(terms.begin(), terms.end(), [&](const Term<K>& a, const Term<K>& b) {
      return compare(a.mono, b.mono, ord) > 0;
    });
    Poly out;
    for (auto& t : terms) {
      if (coeff_is_zero(t.coeff)) continue;
      if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
        out.terms_.back().coeff = out.terms_.back().coeff + t.coeff;
        if (coeff_is_zero(out.terms_.back().coeff)) out.terms_.pop_back();
      } else {
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  // terms must already be strictly descending with nonzero coefficients
  static Poly from_sorted(std::vector<Term<K>> terms) {
    Poly out;
    out.terms_ = std::move(terms);
    return out;
  }

  const std::vector<Term<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term<K>& lead() const {
    if (terms_.empty()) throw ZeroPolynomialError("lead term of zero polynomial");
    return terms_.front();
  }
  const Monomial& lead_monomial() const { return lead().mono; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].mono != b.terms_[i].mono)
        return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  std::vector<Term<K>> terms_;
};

template <class K>
Poly<K> add(const Poly<K>& f, const Poly<K>& g, Ordering ord) {
  std::vector<Term<K>> out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  const auto& a = f.terms();
  const auto& b = g.terms();
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono, ord);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      K s = a[i].coeff + b[j].coeff;
      if (!coeff_is_zero(s)) out.push_back({s, a[i].mono});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return Poly<K>::from_sorted(std::move(out));
}

template <class K>
Poly<K> neg(const Poly<K>& f) {
  std::vector<Term<K>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({-t.coeff, t.mono});
  return Poly<K>::from_sorted(std::move(out));
}

template <class K>
Poly<K> sub(const Poly<K>& f, const Poly<K>& g, Ordering ord) {
  return add(f, neg(g), ord);
}

// term * poly; multiplicativity of the ordering keeps terms sorted
template <class K>
Poly<K> term_mul(const Term<K>& t, const Poly<K>& f) {
  if (coeff_is_zero(t.coeff)) return Poly<K>();
  std::vector<Term<K>> out;
  out.reserve(f.size());
  for (const auto& ft : f.terms()) out.push_back({t.coeff * ft.coeff, mul(t.mono, ft.mono)});
  return Poly<K>::from_sorted(std::move(out));
}

template <class K>
Poly<K> scalar_mul(const K& c, const Poly<K>& f) {
  if (coeff_is_zero(c)) return Poly<K>();
  std::vector<Term<K>> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({c * t.coeff, t.mono});
  return Poly<K>::from_sorted(std::move(out));
}

template <class K>
Poly<K> mul(const Poly<K>& f, const Poly<K>& g, Ordering ord) {
  std::vector<Term<K>> out;
  out.reserve(f.size() * g.size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) out.push_back({a.coeff * b.coeff, mul(a.mono, b.mono)});
  return Poly<K>::from_terms(std::move(out), ord);
}

template <class K>
Poly<K> make_monic(const Poly<K>& f) {
  if (f.is_zero()) throw ZeroPolynomialError("make_monic of zero polynomial");
  return scalar_mul(f.lead().coeff.inverse(), f);
}

struct ReduceModP {
  Poly<Zp> image;
  bool lead_lost;  // p divides the lead coefficient of the primitive form
};

// Scale f to a primitive integer polynomial with positive lead coefficient
// (clear denominators, divide by content), then map coefficients into Z/p
// and drop vanishing terms.
ReduceModP reduce_mod_p(const Poly<BigRat>& f, std::uint64_t p);

// The primitive integer coefficients of f, in term order.
std::vector<BigInt> primitive_coeffs(const Poly<BigRat>& f);

// Coefficient-wise reduction a/b -> a * b^{-1} mod p; throws NotInvertibleError
// when p divides some denominator.
Poly<Zp> poly_mod(const Poly<BigRat>& f, std::uint64_t p);

}  // namespace modlift

#endif  // MODLIFT_POLY_HPP
