#include <modlift/gb_worker.hpp>

namespace modlift {

bool verify_gb(const std::vector<Poly<BigRat>>& F, const std::vector<Poly<BigRat>>& U,
               Ordering ord) {
  for (const auto& f : F)
    if (!f.is_zero() && !normal_form(f, U, ord).is_zero()) return false;
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (!normal_form(s_poly(U[i], U[j], ord), U, ord).is_zero()) return false;
  return true;
}

ModularWorker groebner_worker(const std::vector<Poly<BigRat>>& F, Ordering ord) {
  std::vector<Poly<BigRat>> gens;
  for (const auto& f : F)
    if (!f.is_zero()) gens.push_back(f);

  // lead coefficients of the content-normalized input: primes dividing one
  // would change a lead monomial on reduction (cheap type-1 guard)
  std::vector<BigInt> lead_coeffs;
  for (const auto& f : gens) lead_coeffs.push_back(primitive_coeffs(f).front());

  ModularWorker w;
  w.applicable = [lead_coeffs](std::uint64_t p) {
    for (const auto& c : lead_coeffs)
      if (mpz_fdiv_ui(c.get_mpz_t(), p) == 0) return false;
    return true;
  };
  w.run = [gens, ord](std::uint64_t p) -> std::optional<ModularImage> {
    std::vector<Poly<Zp>> Fp;
    for (const auto& f : gens) {
      ReduceModP r = reduce_mod_p(f, p);
      if (!r.image.is_zero()) Fp.push_back(std::move(r.image));
    }
    std::vector<Poly<Zp>> G = buchberger(Fp, ord);
    ModularImage img;
    for (const auto& g : G) {
      std::string row = mono_key(g.lead_monomial());
      img.rows.push_back(row);
      for (const auto& t : g.terms())
        img.cells.push_back({row, mono_key(t.mono), t.coeff.v, t.mono == g.lead_monomial()});
    }
    return img;
  };
  w.verify = [gens, ord](const RationalResult& result) {
    std::vector<Poly<BigRat>> U;
    try {
      U = basis_from_result(result, ord);
    } catch (const Error&) {
      return false;
    }
    for (std::size_t i = 0; i < U.size(); ++i) {
      if (U[i].is_zero()) return false;
      if (U[i].lead().coeff != BigRat(1)) return false;  // must be monic
      if (mono_key(U[i].lead_monomial()) != result.rows[i]) return false;
    }
    return verify_gb(gens, U, ord);
  };
  return w;
}

std::vector<Poly<BigRat>> basis_from_result(const RationalResult& result, Ordering ord) {
  std::vector<Poly<BigRat>> out;
  out.reserve(result.rows.size());
  for (const auto& row : result.rows) {
    std::vector<Term<BigRat>> terms;
    for (const auto& [key, value] : result.cells)
      if (key.first == row) terms.push_back({value, mono_from_key(key.second)});
    out.push_back(Poly<BigRat>::from_terms(std::move(terms), ord));
  }
  return out;
}

std::vector<Poly<BigRat>> modular_groebner(const std::vector<Poly<BigRat>>& F,
                                           Ordering ord, const EngineOptions& opts,
                                           const FaultPlan& plan, RunReport* report) {
  bool all_zero = true;
  for (const auto& f : F)
    if (!f.is_zero()) all_zero = false;
  if (all_zero) return {};

  ModularWorker worker = groebner_worker(F, ord);
  if (!plan.empty()) worker = inject_faults(worker, plan);
  RationalResult result = run_modular(worker, opts, report);
  return basis_from_result(result, ord);
}

}  // namespace modlift
