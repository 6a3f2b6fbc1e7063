#ifndef MODLIFT_GB_WORKER_HPP
#define MODLIFT_GB_WORKER_HPP

#include <modlift/engine.hpp>
#include <modlift/groebner.hpp>
#include <modlift/poly_io.hpp>

namespace modlift {

// Step-6 certificate: U is a Groebner basis (every S-polynomial reduces to
// zero over Q) and <F> is contained in <U>. The reverse containment is
// covered probabilistically by the step-5 extra-prime test.
bool verify_gb(const std::vector<Poly<BigRat>>& F, const std::vector<Poly<BigRat>>& U,
               Ordering ord);

// Per-prime worker: reduce F mod p, run Buchberger over Z/p, and emit the
// basis as signature rows (lead monomial keys) plus coefficient cells.
ModularWorker groebner_worker(const std::vector<Poly<BigRat>>& F, Ordering ord);

std::vector<Poly<BigRat>> basis_from_result(const RationalResult& result, Ordering ord);

// The whole scheme applied to reduced Groebner bases. On success the output
// is the reduced basis over Q, identical to buchberger(F, ord).
std::vector<Poly<BigRat>> modular_groebner(const std::vector<Poly<BigRat>>& F,
                                           Ordering ord, const EngineOptions& opts,
                                           const FaultPlan& plan = {},
                                           RunReport* report = nullptr);

}  // namespace modlift

#endif  // MODLIFT_GB_WORKER_HPP
