#include <modlift/groebner.hpp>

namespace modlift {

LmEquivalence check_lm_equivalence(const std::vector<Poly<BigRat>>& F, std::uint64_t p,
                                   Ordering ord) {
  std::vector<Poly<BigRat>> G = buchberger(F, ord);

  std::vector<Poly<Zp>> Fp;
  for (const auto& f : F) {
    ReduceModP r = reduce_mod_p(f, p);
    if (!r.image.is_zero()) Fp.push_back(r.image);
  }
  std::vector<Poly<Zp>> G_direct = buchberger(Fp, ord);  // G(p)

  // G_p: the coefficient-wise image of the monic basis G. Undefined when p
  // divides a denominator, which only happens at bad primes; an undefined
  // image cannot equal G(p).
  std::vector<Poly<Zp>> G_image;
  bool image_defined = true;
  for (const auto& g : G) {
    try {
      G_image.push_back(poly_mod(g, p));
    } catch (const NotInvertibleError&) {
      image_defined = false;
      break;
    }
  }

  LmEquivalence out{};
  out.lm_equal = lead_signature(G, ord) == lead_signature(G_direct, ord);
  out.reductions_equal = image_defined && G_image.size() == G_direct.size();
  if (out.reductions_equal) {
    std::sort(G_image.begin(), G_image.end(), [&](const Poly<Zp>& a, const Poly<Zp>& b) {
      return compare(a.lead_monomial(), b.lead_monomial(), ord) > 0;
    });
    for (std::size_t i = 0; i < G_image.size(); ++i)
      if (G_image[i] != G_direct[i]) {
        out.reductions_equal = false;
        break;
      }
  }
  return out;
}

Poly<BigRat> homogenize(const Poly<BigRat>& f, Ordering ord) {
  if (f.is_zero()) return f;
  unsigned d = 0;
  for (const auto& t : f.terms()) d = std::max(d, t.mono.deg());
  std::vector<Term<BigRat>> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.e.push_back(d - t.mono.deg());
    terms.push_back({t.coeff, std::move(m)});
  }
  return Poly<BigRat>::from_terms(std::move(terms), ord);
}

std::vector<Poly<BigRat>> homogenize_all(const std::vector<Poly<BigRat>>& F, Ordering ord) {
  std::vector<Poly<BigRat>> out;
  out.reserve(F.size());
  for (const auto& f : F) out.push_back(homogenize(f, ord));
  return out;
}

}  // namespace modlift
