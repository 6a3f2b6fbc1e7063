#include <modlift/bigint.hpp>

#include <utility>

namespace modlift {

BigInt parse_bigint(const std::string& text) {
  if (text.empty()) throw SyntaxError("empty integer", 0);
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw SyntaxError("sign without digits", i);
  for (; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') throw SyntaxError("bad digit in integer", i);
  BigInt v(text[0] == '+' ? text.substr(1) : text, 10);
  return v;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
  ExtGcd r;
  BigInt old_r = a, rem = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (rem != 0) {
    BigInt q = old_r / rem;  // truncated division
    BigInt tmp = old_r - q * rem;
    old_r = std::move(rem);
    rem = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  r.g = std::move(old_r);
  r.u = std::move(old_s);
  r.v = std::move(old_t);
  return r;
}

BigRat::BigRat(const BigInt& num, const BigInt& den) : num_(num), den_(den) {
  if (den_ == 0) throw DivisionByZeroError("rational with zero denominator");
  normalize();
}

void BigRat::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

BigRat BigRat::operator-() const {
  BigRat r = *this;
  r.num_ = -r.num_;
  return r;
}

BigRat& BigRat::operator+=(const BigRat& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRat& BigRat::operator-=(const BigRat& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRat& BigRat::operator*=(const BigRat& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

BigRat& BigRat::operator/=(const BigRat& o) {
  if (o.num_ == 0) throw DivisionByZeroError("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

BigRat BigRat::inverse() const {
  if (num_ == 0) throw DivisionByZeroError("inverse of zero rational");
  return BigRat(den_, num_);
}

BigRat BigRat::abs() const { return num_ < 0 ? -*this : *this; }

std::string BigRat::str() const {
  if (den_ == 1) return num_.get_str(10);
  return num_.get_str(10) + "/" + den_.get_str(10);
}

BigRat BigRat::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return BigRat(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw SyntaxError("zero denominator", slash + 1);
  return BigRat(num, den);
}

Residue::Residue(const BigInt& v, const BigInt& m) : value(v), modulus(m) {
  if (modulus < 2) throw Error("residue modulus must be >= 2");
  mpz_mod(value.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());  // into [0, m)
}

std::string Residue::str() const {
  return value.get_str(10) + " mod " + modulus.get_str(10);
}

Residue mod_inverse(const BigInt& a, const BigInt& m) {
  if (m < 2) throw Error("modulus must be >= 2");
  ExtGcd e = ext_gcd(a, m);
  if (e.g != 1)
    throw NotInvertibleError("no inverse of " + to_string(a) + " mod " + to_string(m) +
                             ": gcd = " + to_string(e.g));
  return Residue(e.u, m);
}

Residue rat_mod(const BigRat& q, const BigInt& m) {
  Residue inv = mod_inverse(q.den(), m);
  return Residue(q.num() * inv.value, m);
}

}  // namespace modlift
