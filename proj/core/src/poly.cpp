#include <modlift/poly.hpp>

#include <cassert>

namespace modlift {

std::vector<BigInt> primitive_coeffs(const Poly<BigRat>& f) {
  std::vector<BigInt> out;
  if (f.is_zero()) return out;
  BigInt den_lcm = 1;
  for (const auto& t : f.terms())
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.den().get_mpz_t());
  out.reserve(f.size());
  BigInt content = 0;
  for (const auto& t : f.terms()) {
    out.push_back(t.coeff.num() * (den_lcm / t.coeff.den()));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  assert(content > 0);
  if (out.front() < 0) content = -content;  // positive lead coefficient
  for (auto& c : out) c /= content;
  return out;
}

ReduceModP reduce_mod_p(const Poly<BigRat>& f, std::uint64_t p) {
  ReduceModP r{Poly<Zp>(), false};
  if (f.is_zero()) return r;
  std::vector<BigInt> prim = primitive_coeffs(f);
  std::vector<Term<Zp>> terms;
  terms.reserve(prim.size());
  bool any = false;
  for (std::size_t i = 0; i < prim.size(); ++i) {
    std::uint64_t v = mpz_fdiv_ui(prim[i].get_mpz_t(), p);
    if (i == 0 && v == 0) r.lead_lost = true;
    if (v == 0) continue;
    any = true;
    terms.push_back({Zp(v, p), f.terms()[i].mono});
  }
  // a primitive nonzero polynomial cannot vanish identically mod p
  assert(any);
  (void)any;
  r.image = Poly<Zp>::from_sorted(std::move(terms));
  return r;
}

Poly<Zp> poly_mod(const Poly<BigRat>& f, std::uint64_t p) {
  std::vector<Term<Zp>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    std::uint64_t den = mpz_fdiv_ui(t.coeff.den().get_mpz_t(), p);
    if (den == 0)
      throw NotInvertibleError("denominator divisible by " + std::to_string(p));
    Zp c = Zp(mpz_fdiv_ui(t.coeff.num().get_mpz_t(), p), p) * Zp(den, p).inverse();
    if (!c.is_zero()) terms.push_back({c, t.mono});
  }
  return Poly<Zp>::from_sorted(std::move(terms));
}

}  // namespace modlift
