#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <modlift/engine.hpp>
#include <modlift/gb_worker.hpp>
#include <modlift/primes.hpp>

#include "corpus.hpp"

#include <random>

using namespace modlift;

namespace {

ModularRun ok_run(std::uint64_t prime, std::vector<std::string> rows,
                  std::vector<Cell> cells = {}) {
  ModularRun r;
  r.prime = prime;
  r.status = RunStatus::ok;
  r.image = ModularImage{std::move(rows), std::move(cells), std::nullopt};
  return r;
}

std::string basis_text(const std::vector<Poly<BigRat>>& basis, const Ring& ring) {
  std::string out;
  for (const auto& g : basis) out += poly_str(g, ring) + "\n";
  return out;
}

}  // namespace

TEST_CASE("majority_vote picks the most supported signature") {
  std::vector<ModularRun> runs{ok_run(5, {"a"}), ok_run(7, {"a"}), ok_run(11, {"b"})};
  VoteOutcome v = majority_vote(runs);
  CHECK(v.winner_key == "a");
  CHECK(v.supporters == std::vector<std::uint64_t>{5, 7});
  CHECK(v.discarded == std::vector<std::uint64_t>{11});
  CHECK(v.tally.at("a") == 2);
  CHECK(v.tally.at("b") == 1);

  CHECK(majority_vote({ok_run(5, {"a"})}).winner_key == "a");
  CHECK_THROWS_AS(majority_vote({}), NoUsableRunsError);
  ModularRun failed;
  failed.prime = 3;
  failed.status = RunStatus::failed;
  CHECK_THROWS_AS(majority_vote({failed}), NoUsableRunsError);
}

TEST_CASE("majority_vote ties break on the smallest serialized signature") {
  std::vector<ModularRun> runs{ok_run(5, {"b"}), ok_run(7, {"a"}), ok_run(11, {"a"}),
                               ok_run(13, {"b"})};
  VoteOutcome ref = majority_vote(runs);
  CHECK(ref.winner_key == "a");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(runs.begin(), runs.end(), rng);
    VoteOutcome v = majority_vote(runs);
    CHECK(v.winner_key == ref.winner_key);
    CHECK(v.supporters == ref.supporters);
    CHECK(v.discarded == ref.discarded);
  }
}

TEST_CASE("adding a supporter of the winner never changes the winner") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ModularRun> runs;
    std::uint64_t prime = 3;
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i)
      runs.push_back(ok_run(prime += 2, {std::string(1, 'a' + char(rng() % 3))}));
    VoteOutcome before = majority_vote(runs);
    runs.push_back(ok_run(9973, before.winner_rows));
    VoteOutcome after = majority_vote(runs);
    CHECK(after.winner_key == before.winner_key);
  }
}

TEST_CASE("lift_and_reconstruct combines residues per coefficient slot") {
  // truth 1/2 at primes 5 and 11: residues 3 and 6, CRT 28 mod 55
  std::vector<ModularRun> runs{ok_run(5, {"r"}, {{"r", "c", 3, false}}),
                               ok_run(11, {"r"}, {{"r", "c", 6, false}})};
  std::vector<const ModularRun*> supporters{&runs[0], &runs[1]};
  auto lifted = lift_and_reconstruct(supporters, {"r"});
  REQUIRE(lifted.has_value());
  CHECK(lifted->cells.at({"r", "c"}) == BigRat(1, 2));

  // a slot missing mod one prime contributes residue zero there
  std::vector<ModularRun> sparse{ok_run(5, {"r"}, {{"r", "c", 0, false}}),
                                 ok_run(11, {"r"}, {})};
  auto zero = lift_and_reconstruct({&sparse[0], &sparse[1]}, {"r"});
  REQUIRE(zero.has_value());
  CHECK(zero->cells.empty());  // reconstructed zeros are dropped

  // empty signature: empty result
  auto empty = lift_and_reconstruct(supporters, {});
  REQUIRE(empty.has_value());
  CHECK(empty->rows.empty());
}

TEST_CASE("a single small prime reconstructs a small wrong value, then step 5 saves it") {
  // truth coefficient 3 mod 7: the lattice <(7,0),(3,1)> contains (1,-2) of
  // norm 5 < 7, so the lift "succeeds" with -1/2 instead of failing
  std::vector<ModularRun> runs{ok_run(7, {"r"}, {{"r", "c", 3, false}})};
  auto lifted = lift_and_reconstruct({&runs[0]}, {"r"});
  REQUIRE(lifted.has_value());
  CHECK(lifted->cells.at({"r", "c"}) == BigRat(-1, 2));

  // the full engine still converges to the truth: the extra-prime test
  // rejects the wrong lift and the prime set grows
  std::vector<BigRat> truth{BigRat(3)};
  EngineOptions opts;
  opts.forced_primes = {7};
  opts.prime_bits = 8;
  opts.seed = 5;
  RunReport rep;
  RationalResult res = run_modular(vector_worker(truth), opts, &rep);
  CHECK(res.cells.at({"v", "000000"}) == BigRat(3));
  CHECK(rep.rounds_total >= 2);
  CHECK_FALSE(rep.rounds.front().extra_test.ok);
}

TEST_CASE("vector worker mirrors the worked corruption example") {
  // (1/2, 1/3, 5/6) over {5, 7, 101} with the residues at 5 corrupted
  std::vector<BigRat> truth{BigRat(1, 2), BigRat(1, 3), BigRat(5, 6)};
  EngineOptions opts;
  opts.forced_primes = {5, 7, 101};
  opts.prime_bits = 16;
  opts.seed = 42;
  FaultPlan plan{{5, FaultType::type5}};
  RunReport rep;
  RationalResult res =
      run_modular(inject_faults(vector_worker(truth), plan), opts, &rep);
  CHECK(res.cells.at({"v", "000000"}) == BigRat(1, 2));
  CHECK(res.cells.at({"v", "000001"}) == BigRat(1, 3));
  CHECK(res.cells.at({"v", "000002"}) == BigRat(5, 6));
  CHECK(rep.ok);
  CHECK(rep.rounds_total == 1);  // error tolerance absorbs the bad prime
}

TEST_CASE("inject_faults: none leaves the worker bit-identical") {
  std::vector<BigRat> truth{BigRat(2, 3), BigRat(7)};
  ModularWorker w = vector_worker(truth);
  ModularWorker wrapped = inject_faults(w, {});
  for (std::uint64_t p : {5ull, 11ull, 101ull}) {
    auto a = w.run(p);
    auto b = wrapped.run(p);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->rows == b->rows);
    REQUIRE(a->cells.size() == b->cells.size());
    for (std::size_t i = 0; i < a->cells.size(); ++i) {
      CHECK(a->cells[i].row == b->cells[i].row);
      CHECK(a->cells[i].col == b->cells[i].col);
      CHECK(a->cells[i].value == b->cells[i].value);
    }
  }
}

TEST_CASE("inject_faults: each fault type behaves as declared") {
  std::vector<BigRat> truth{BigRat(2, 3), BigRat(7)};
  ModularWorker w = vector_worker(truth);

  ModularWorker t1 = inject_faults(w, {{11, FaultType::type1}});
  CHECK_FALSE(t1.applicable(11));
  CHECK(t1.applicable(13));

  ModularWorker t2 = inject_faults(w, {{11, FaultType::type2}});
  CHECK_FALSE(t2.run(11).has_value());
  CHECK(t2.run(13).has_value());

  ModularWorker t3 = inject_faults(w, {{11, FaultType::type3}});
  CHECK(t3.run(11)->invariant == "injected:wrong");
  CHECK_FALSE(t3.run(13)->invariant.has_value());

  ModularWorker t4 = inject_faults(w, {{11, FaultType::type4}});
  CHECK(t4.run(11)->rows.empty());  // single row dropped
  CHECK_FALSE(t4.run(13)->rows.empty());

  ModularWorker t5 = inject_faults(w, {{11, FaultType::type5}});
  auto plain = w.run(11);
  auto bent = t5.run(11);
  CHECK(bent->rows == plain->rows);  // signature preserved
  bool differs = false;
  for (std::size_t i = 0; i < plain->cells.size(); ++i)
    if (bent->cells[i].value != plain->cells[i].value) differs = true;
  CHECK(differs);
}

TEST_CASE("type-3 injection is caught by the invariant hook") {
  std::vector<BigRat> truth{BigRat(1, 2)};
  ModularWorker w = vector_worker(truth);
  auto inner_run = w.run;
  w.run = [inner_run](std::uint64_t p) {
    auto img = inner_run(p);
    if (img) img->invariant = "dim=0";
    return img;
  };
  EngineOptions opts;
  opts.forced_primes = {5, 7, 11};
  opts.prime_bits = 16;
  opts.expected_invariant = "dim=0";
  RunReport rep;
  RationalResult res =
      run_modular(inject_faults(w, {{7, FaultType::type3}}), opts, &rep);
  CHECK(res.cells.at({"v", "000000"}) == BigRat(1, 2));
  bool saw_type3 = false;
  for (const auto& pr : rep.rounds.back().runs)
    if (pr.prime == 7 && pr.status == "failed") saw_type3 = true;
  CHECK(saw_type3);
}

TEST_CASE("modular groebner discards the characteristic-2 collapse by vote") {
  auto ideal = corpus::sym2();
  EngineOptions opts;
  opts.forced_primes = {2, 3, 5, 7, 11};
  opts.prime_bits = 16;
  opts.seed = 1;
  RunReport rep;
  auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts, {}, &rep);
  CHECK(basis_text(basis, ideal.ring) == "x\ny\n");
  REQUIRE(rep.rounds_total == 1);
  CHECK(rep.rounds[0].discarded == std::vector<std::uint64_t>{2});
  CHECK(rep.rounds[0].supporters == std::vector<std::uint64_t>{3, 5, 7, 11});
  bool two_done = false;
  for (const auto& pr : rep.rounds[0].runs)
    if (pr.prime == 2) CHECK(pr.status == "ok");  // voted out, still an ok run
  for (const auto& pr : rep.rounds[0].runs)
    if (pr.prime == 3) two_done = pr.status == "done";
  CHECK(two_done);
}

TEST_CASE("modular groebner equals the rational oracle on the corpus") {
  for (const auto& ideal : corpus::all()) {
    CAPTURE(ideal.name);
    auto oracle = buchberger(ideal.gens, ideal.ring.order);
    EngineOptions opts;
    opts.initial_primes = 3;
    opts.prime_bits = 20;
    opts.seed = 11;
    auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts);
    REQUIRE(basis.size() == oracle.size());
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == oracle[i]);
  }
}

TEST_CASE("faulty primes do not change the result") {
  std::mt19937_64 rng(13);
  for (const auto& ideal : corpus::all()) {
    CAPTURE(ideal.name);
    auto oracle = buchberger(ideal.gens, ideal.ring.order);

    // 10 forced primes, ~30% type-4, ~20% type-5, one type-2
    PrimeStream stream(24, {}, rng());
    EngineOptions opts;
    opts.prime_bits = 24;
    opts.seed = rng();
    FaultPlan plan;
    for (int i = 0; i < 10; ++i)
      opts.forced_primes.push_back(mpz_get_ui(stream.next().get_mpz_t()));
    plan[opts.forced_primes[0]] = FaultType::type4;
    plan[opts.forced_primes[3]] = FaultType::type4;
    plan[opts.forced_primes[6]] = FaultType::type4;
    plan[opts.forced_primes[1]] = FaultType::type5;
    plan[opts.forced_primes[8]] = FaultType::type5;
    plan[opts.forced_primes[5]] = FaultType::type2;

    auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts, plan);
    REQUIRE(basis.size() == oracle.size());
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == oracle[i]);
  }
}

TEST_CASE("the engine is deterministic and schedule-independent") {
  auto ideal = corpus::katsura2();
  EngineOptions opts;
  opts.initial_primes = 4;
  opts.prime_bits = 20;
  opts.seed = 99;
  FaultPlan plan;  // empty
  RunReport rep1, rep2;
  auto b1 = modular_groebner(ideal.gens, ideal.ring.order, opts, plan, &rep1);
  auto b2 = modular_groebner(ideal.gens, ideal.ring.order, opts, plan, &rep2);
  CHECK(rep1.rounds_total == rep2.rounds_total);
  CHECK(basis_text(b1, ideal.ring) == basis_text(b2, ideal.ring));

  EngineOptions par = opts;
  par.jobs = 3;
  RunReport rep3;
  auto b3 = modular_groebner(ideal.gens, ideal.ring.order, par, plan, &rep3);
  CHECK(basis_text(b3, ideal.ring) == basis_text(b1, ideal.ring));
  CHECK(rep3.rounds_total == rep1.rounds_total);

  EngineOptions other = opts;
  other.seed = 100;
  auto b4 = modular_groebner(ideal.gens, ideal.ring.order, other, plan);
  CHECK(basis_text(b4, ideal.ring) == basis_text(b1, ideal.ring));  // same value
}

TEST_CASE("termination with a fixed finite set of bad primes") {
  // the whole initial prime set misbehaves, consistently enough to win the
  // first vote; enlargement into clean primes must still reach the truth
  FaultPlan plan{{3, FaultType::type4},
                 {7, FaultType::type4},
                 {13, FaultType::type4},
                 {17, FaultType::type2},
                 {19, FaultType::type2}};
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto ideal = corpus::cyclic3();
    auto oracle = buchberger(ideal.gens, ideal.ring.order);
    EngineOptions opts;
    opts.forced_primes = {3, 7, 13, 17, 19};
    opts.prime_bits = 8;
    opts.seed = seed;
    opts.max_rounds = 12;
    RunReport rep;
    auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts, plan, &rep);
    REQUIRE(basis.size() == oracle.size());
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == oracle[i]);
    CHECK(rep.rounds_total >= 2);  // the truncated signature won round one
  }
}

TEST_CASE("robustness: more good mass than bad recovers the toy vector") {
  std::mt19937_64 rng(17);
  PrimeStream stream(20, {}, 23);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<BigRat> truth;
    BigInt height = 1;
    int len = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < len; ++i) {
      long num = static_cast<long>(rng() % (1 << 20)) - (1 << 19);
      long den = 1 + static_cast<long>(rng() % (1 << 10));
      truth.emplace_back(BigInt(num), BigInt(den));
      BigInt h = truth.back().num() * truth.back().num() +
                 truth.back().den() * truth.back().den();
      if (h > height) height = h;
    }

    // bad primes first, then good primes until the good modulus clears the
    // reconstruction bound with margin (g > b throughout)
    int bad = 1 + static_cast<int>(rng() % 2);
    EngineOptions opts;
    opts.prime_bits = 20;
    opts.seed = rng();
    FaultPlan plan;
    BigInt bad_product = 1;
    for (int i = 0; i < bad; ++i) {
      std::uint64_t p = mpz_get_ui(stream.next().get_mpz_t());
      opts.forced_primes.push_back(p);
      plan[p] = FaultType::type5;
      bad_product *= static_cast<unsigned long>(p);
    }
    BigInt good_product = 1;
    while (good_product <= 8 * height * bad_product ||
           static_cast<int>(opts.forced_primes.size()) < 2 * bad + 1) {
      std::uint64_t p = mpz_get_ui(stream.next().get_mpz_t());
      bool skip = false;
      for (const auto& q : truth)
        if (mpz_fdiv_ui(q.den().get_mpz_t(), p) == 0) skip = true;
      if (skip) continue;
      opts.forced_primes.push_back(p);
      good_product *= static_cast<unsigned long>(p);
    }

    RunReport rep;
    RationalResult res =
        run_modular(inject_faults(vector_worker(truth), plan), opts, &rep);
    for (int i = 0; i < len; ++i) {
      std::string col = std::string(5, '0') + std::to_string(i);
      auto it = res.cells.find({"v", col});
      BigRat got = it == res.cells.end() ? BigRat(0) : it->second;
      CHECK(got == truth[i]);
    }
    CHECK(rep.rounds_total == 1);  // the hypothesis guarantees first-round success
  }
}

TEST_CASE("strict mode tests several extra primes in step 5") {
  std::vector<BigRat> truth{BigRat(3, 7), BigRat(-2, 5)};
  EngineOptions opts;
  opts.prime_bits = 16;
  opts.initial_primes = 4;
  opts.strict_extra = 3;
  opts.seed = 21;
  RunReport rep;
  RationalResult res = run_modular(vector_worker(truth), opts, &rep);
  CHECK(res.cells.at({"v", "000000"}) == BigRat(3, 7));
  CHECK(rep.rounds.back().extra_test.primes.size() == 3);
  CHECK(rep.rounds.back().extra_test.ok);
}

TEST_CASE("the default word-size prime path works end to end") {
  auto ideal = corpus::katsura2();
  auto oracle = buchberger(ideal.gens, ideal.ring.order);
  EngineOptions opts;  // prime_bits 60, initial_primes 4
  opts.seed = 31;
  RunReport rep;
  auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts, {}, &rep);
  REQUIRE(basis.size() == oracle.size());
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == oracle[i]);
  CHECK(rep.rounds_total == 1);
  for (std::uint64_t p : rep.rounds[0].supporters) CHECK(p >= (1ull << 59));
}

TEST_CASE("worker that is never applicable raises an error") {
  ModularWorker w = vector_worker({BigRat(1)});
  w.applicable = [](std::uint64_t) { return false; };
  EngineOptions opts;
  opts.prime_bits = 10;
  opts.initial_primes = 2;
  CHECK_THROWS_AS(run_modular(w, opts), WorkerNeverApplicableError);
}

TEST_CASE("round limit carries the per-round diagnostics") {
  ModularWorker w = vector_worker({BigRat(1, 2)});
  w.verify = [](const RationalResult&) { return false; };  // never verifies
  EngineOptions opts;
  opts.prime_bits = 16;
  opts.initial_primes = 2;
  opts.max_rounds = 3;
  opts.seed = 7;
  try {
    run_modular(w, opts);
    FAIL("expected RoundLimitError");
  } catch (const RoundLimitError& e) {
    CHECK(e.report.rounds.size() == 3);
    for (const auto& round : e.report.rounds) {
      CHECK(round.lift == "ok");
      CHECK_FALSE(round.verified);
      CHECK_FALSE(round.tally.empty());
    }
  }
}

TEST_CASE("a type-5 lift that slips past the vote is caught downstream") {
  // two large corrupted primes against three small good ones: the corrupted
  // coefficient violates the lift bound, so either reconstruction fails or
  // the extra-prime test rejects; a retry then succeeds
  const std::uint64_t big1 = 1073741827ull, big2 = 1073741831ull;
  FaultPlan plan{{big1, FaultType::type5}, {big2, FaultType::type5}};
  for (const auto& ideal : corpus::all()) {
    CAPTURE(ideal.name);
    auto oracle = buchberger(ideal.gens, ideal.ring.order);
    bool has_nonlead_cells = false;
    for (const auto& g : oracle)
      if (g.size() > 1) has_nonlead_cells = true;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      EngineOptions opts;
      opts.prime_bits = 16;
      opts.seed = seed;
      opts.max_rounds = 10;
      opts.forced_primes = {101, 103, 107, big1, big2};
      RunReport rep;
      auto basis = modular_groebner(ideal.gens, ideal.ring.order, opts, plan, &rep);
      REQUIRE(basis.size() == oracle.size());
      for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == oracle[i]);
      if (has_nonlead_cells) {
        // the corruption actually bit, and a later stage caught it
        const auto& first = rep.rounds.at(0);
        bool rejected = first.lift != "ok" || !first.extra_test.ok || !first.verified;
        CHECK(rejected);
        CHECK(rep.rounds_total >= 2);
      }
    }
  }
}
