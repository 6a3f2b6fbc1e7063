#ifndef MODLIFT_GROEBNER_HPP
#define MODLIFT_GROEBNER_HPP

#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include <modlift/poly.hpp>

namespace modlift {

// lcm(LM f, LM g)/LT(f) * f - lcm/LT(g) * g; throws ZeroPolynomialError.
template <class K>
Poly<K> s_poly(const Poly<K>& f, const Poly<K>& g, Ordering ord) {
  if (f.is_zero() || g.is_zero()) throw ZeroPolynomialError("s_poly of zero polynomial");
  Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
  Term<K> tf{f.lead().coeff.inverse(), div(l, f.lead_monomial())};
  Term<K> tg{g.lead().coeff.inverse(), div(l, g.lead_monomial())};
  return sub(term_mul(tf, f), term_mul(tg, g), ord);
}

// Remainder of f under division by G: no term of the result is divisible by
// any LM(g). Deterministic: always the first divisor in basis order.
template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& G, Ordering ord) {
  Poly<K> p = f;
  std::vector<Term<K>> remainder;
  while (!p.is_zero()) {
    const Term<K>& t = p.lead();
    bool reduced = false;
    for (const auto& g : G) {
      if (g.is_zero()) continue;
      if (divides(g.lead_monomial(), t.mono)) {
        Term<K> q{t.coeff * g.lead().coeff.inverse(), div(t.mono, g.lead_monomial())};
        p = sub(p, term_mul(q, g), ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      remainder.push_back(t);
      std::vector<Term<K>> rest(p.terms().begin() + 1, p.terms().end());
      p = Poly<K>::from_sorted(std::move(rest));
    }
  }
  return Poly<K>::from_sorted(std::move(remainder));
}

namespace detail {

struct PairEntry {
  unsigned deg;
  Monomial l;        // lcm of the two lead monomials
  std::size_t i, j;  // i < j
};

// normal selection strategy: minimal lcm degree, ties by lex on the lcm,
// then by index for full determinism
inline bool pair_before(const PairEntry& a, const PairEntry& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  int c = compare(a.l, b.l, Ordering::lex);
  if (c != 0) return c < 0;
  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
}

}  // namespace detail

// The unique reduced Groebner basis of <F>: monic, auto-reduced, sorted by
// lead monomial descending. Pair handling uses the product and chain criteria.
template <class K>
std::vector<Poly<K>> buchberger(const std::vector<Poly<K>>& F, Ordering ord) {
  std::vector<Poly<K>> G;
  for (const auto& f : F)
    if (!f.is_zero()) G.push_back(make_monic(f));
  if (G.empty()) return G;

  std::vector<detail::PairEntry> queue;
  auto push_pairs = [&](std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      Monomial l = lcm(G[i].lead_monomial(), G[n].lead_monomial());
      queue.push_back({l.deg(), l, i, n});
    }
  };
  for (std::size_t n = 1; n < G.size(); ++n) push_pairs(n);

  auto pending = [&](std::size_t a, std::size_t b) {
    for (const auto& e : queue)
      if (e.i == std::min(a, b) && e.j == std::max(a, b)) return true;
    return false;
  };

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), detail::pair_before);
    detail::PairEntry e = *it;
    queue.erase(it);

    const Monomial& lmi = G[e.i].lead_monomial();
    const Monomial& lmj = G[e.j].lead_monomial();
    // product criterion: coprime lead monomials
    if (e.l == mul(lmi, lmj)) continue;
    // chain criterion: some LM(G[k]) divides the lcm and both companion
    // pairs are already handled
    bool chained = false;
    for (std::size_t k = 0; k < G.size() && !chained; ++k) {
      if (k == e.i || k == e.j) continue;
      if (divides(G[k].lead_monomial(), e.l) && !pending(e.i, k) && !pending(e.j, k))
        chained = true;
    }
    if (chained) continue;

    Poly<K> h = normal_form(s_poly(G[e.i], G[e.j], ord), G, ord);
    if (h.is_zero()) continue;
    G.push_back(make_monic(h));
    push_pairs(G.size() - 1);
  }

  // minimal generating set of the lead ideal
  std::vector<Poly<K>> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!divides(G[j].lead_monomial(), G[i].lead_monomial())) continue;
      // strict divisor, or duplicate lead monomial kept once (first index)
      if (G[j].lead_monomial() != G[i].lead_monomial() || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }

  // inter-reduce tails to a fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Poly<K>> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Poly<K> r = normal_form(minimal[i], others, ord);
      if (r != minimal[i]) {
        minimal[i] = make_monic(r);
        changed = true;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&](const Poly<K>& a, const Poly<K>& b) {
    return compare(a.lead_monomial(), b.lead_monomial(), ord) > 0;
  });
  return minimal;
}

// Lead monomials of a reduced basis, sorted descending under ord; equality
// of signatures is the majority-vote key.
struct LeadIdealSignature {
  std::vector<Monomial> lms;

  friend bool operator==(const LeadIdealSignature& a, const LeadIdealSignature& b) {
    return a.lms == b.lms;
  }
};

template <class K>
LeadIdealSignature lead_signature(const std::vector<Poly<K>>& G, Ordering ord) {
  LeadIdealSignature sig;
  sig.lms.reserve(G.size());
  for (const auto& g : G) sig.lms.push_back(g.lead_monomial());
  std::sort(sig.lms.begin(), sig.lms.end(),
            [&](const Monomial& a, const Monomial& b) { return compare(a, b, ord) > 0; });
  return sig;
}

struct LmEquivalence {
  bool lm_equal;          // LM(G) == LM(G(p))
  bool reductions_equal;  // G_p == G(p), elementwise after making monic
};

// Both field-computable sides of the lead-coefficient theorem: G over Q,
// G(p) over Z/p, and the mod-p image of G.
LmEquivalence check_lm_equivalence(const std::vector<Poly<BigRat>>& F, std::uint64_t p,
                                   Ordering ord);

// Homogenize each generator with a fresh last variable.
Poly<BigRat> homogenize(const Poly<BigRat>& f, Ordering ord);
std::vector<Poly<BigRat>> homogenize_all(const std::vector<Poly<BigRat>>& F, Ordering ord);

}  // namespace modlift

#endif  // MODLIFT_GROEBNER_HPP
