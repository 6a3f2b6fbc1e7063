#ifndef MODLIFT_BIGINT_HPP
#define MODLIFT_BIGINT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <tuple>

#include <modlift/errors.hpp>

namespace modlift {

// Arbitrary-precision signed integer. GMP keeps a canonical zero and exact
// arithmetic for all magnitudes up to memory.
using BigInt = mpz_class;

BigInt parse_bigint(const std::string& text);
std::string to_string(const BigInt& v);

// g = gcd(a,b) >= 0 and u*a + v*b = g.
struct ExtGcd {
  BigInt g, u, v;
};
ExtGcd ext_gcd(const BigInt& a, const BigInt& b);

// Reduced rational number: den > 0, gcd(num, den) = 1, canonical 0 = 0/1.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(const BigInt& n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  BigRat(long n) : num_(n), den_(1) {}           // NOLINT
  BigRat(const BigInt& num, const BigInt& den);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  BigRat operator-() const;
  BigRat& operator+=(const BigRat& o);
  BigRat& operator-=(const BigRat& o);
  BigRat& operator*=(const BigRat& o);
  BigRat& operator/=(const BigRat& o);  // throws DivisionByZeroError on 0

  friend BigRat operator+(BigRat a, const BigRat& b) { return a += b; }
  friend BigRat operator-(BigRat a, const BigRat& b) { return a -= b; }
  friend BigRat operator*(BigRat a, const BigRat& b) { return a *= b; }
  friend BigRat operator/(BigRat a, const BigRat& b) { return a /= b; }

  friend bool operator==(const BigRat& a, const BigRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
  // Exact order; cross-multiplication with positive denominators.
  friend bool operator<(const BigRat& a, const BigRat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }

  BigRat inverse() const;  // throws DivisionByZeroError on 0
  BigRat abs() const;

  // "num/den", or just "num" when den == 1.
  std::string str() const;
  static BigRat parse(const std::string& text);

 private:
  void normalize();
  BigInt num_, den_;
};

// Element of Z/modulus with value canonically in [0, modulus), modulus >= 2.
// Negative inputs are normalized on construction so equality is structural.
struct Residue {
  Residue(const BigInt& value, const BigInt& modulus);

  BigInt value;
  BigInt modulus;

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value == b.value && a.modulus == b.modulus;
  }
  friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

  std::string str() const;  // "value mod modulus"
};

// x with a*x == 1 (mod m); throws NotInvertibleError when gcd(a,m) != 1.
Residue mod_inverse(const BigInt& a, const BigInt& m);

// a/b as an element of Z/m; throws NotInvertibleError when gcd(b,m) != 1.
Residue rat_mod(const BigRat& q, const BigInt& m);

}  // namespace modlift

#endif  // MODLIFT_BIGINT_HPP
