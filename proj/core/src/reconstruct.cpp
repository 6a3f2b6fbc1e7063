#include <modlift/reconstruct.hpp>

namespace modlift {

BigInt round_nearest(const BigInt& num, const BigInt& den) {
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt twice = 2 * r;
  if (twice > den) return q + 1;
  if (twice < den) return q;
  // exact half: to even
  return mpz_even_p(q.get_mpz_t()) ? q : q + 1;
}

Vec2 gauss_lagrange(const LatticeBasis2& basis, std::vector<ReductionStep>* trace) {
  Vec2 a1 = basis.v1, a2 = basis.v2;
  while (norm2(a1) > norm2(a2)) {
    BigInt q = round_nearest(dot(a1, a2), norm2(a2));
    Vec2 rem{a1.x - q * a2.x, a1.y - q * a2.y};
    if (trace) trace->push_back({a1, a2, q, rem});
    a1 = a2;
    a2 = rem;
  }
  return a1;
}

std::optional<BigRat> farey_preimage(const Residue& r) {
  const BigInt& N = r.modulus;
  const BigInt bound2 = (N - 1) / 2;  // accept a iff 2*a^2 <= N-1, i.e. a^2 <= bound2

  // Half-extended Euclid on (N, r): remainders r_i = s_i*N + t_i*r, so every
  // row gives a candidate a = r_i, b = t_i with a == b*r (mod N). Stop at the
  // first remainder within the numerator bound.
  BigInt old_r = N, rem = r.value;
  BigInt old_t = 0, t = 1;
  while (rem * rem > bound2) {  // rem > 0 whenever the body runs
    BigInt q = old_r / rem;
    BigInt tmp = old_r - q * rem;
    old_r = rem;
    rem = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  BigInt a = rem, b = t;
  if (b == 0) return std::nullopt;
  if (b < 0) {
    a = -a;
    b = -b;
  }
  if (b * b > bound2) return std::nullopt;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), N.get_mpz_t());
  if (g != 1) return std::nullopt;
  return BigRat(a, b);
}

std::optional<ReconResult> error_tolerant(const Residue& r,
                                          std::vector<ReductionStep>* trace) {
  const BigInt& N = r.modulus;
  LatticeBasis2 lat{{N, 0}, {r.value, 1}};
  Vec2 v = gauss_lagrange(lat, trace);
  BigInt n2 = norm2(v);
  if (n2 >= N) return std::nullopt;
  if (v.y == 0) throw DivisionByZeroError("shortest lattice vector has zero denominator");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), v.x.get_mpz_t(), v.y.get_mpz_t());
  ReconResult out{BigRat(v.x, v.y), n2, g, v};
  return out;
}

}  // namespace modlift
