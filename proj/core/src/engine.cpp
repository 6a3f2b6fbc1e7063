#include <modlift/engine.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <thread>

#include <modlift/crt.hpp>
#include <modlift/primes.hpp>
#include <modlift/reconstruct.hpp>

namespace modlift {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void sort_cells(ModularImage& img) {
  std::sort(img.cells.begin(), img.cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
}

// nonzero cell map for comparisons
std::map<std::pair<std::string, std::string>, std::uint64_t> cell_map(
    const ModularImage& img) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> m;
  for (const auto& c : img.cells)
    if (c.value != 0) m[{c.row, c.col}] = c.value;
  return m;
}

// candidate reduced coefficient-wise mod p; nullopt when p divides a
// denominator and the comparison cannot be made with this prime
std::optional<std::map<std::pair<std::string, std::string>, std::uint64_t>>
reduce_candidate(const RationalResult& cand, std::uint64_t p) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> m;
  for (const auto& [key, value] : cand.cells) {
    if (mpz_fdiv_ui(value.den().get_mpz_t(), p) == 0) return std::nullopt;
    Residue r = rat_mod(value, BigInt(static_cast<unsigned long>(p)));
    std::uint64_t v = mpz_get_ui(r.value.get_mpz_t());
    if (v != 0) m[key] = v;
  }
  return m;
}

// run the worker over a prime batch, optionally in parallel; results keep
// the batch order so scheduling cannot change the outcome
std::vector<std::optional<ModularImage>> run_batch(const ModularWorker& worker,
                                                   const std::vector<std::uint64_t>& primes,
                                                   unsigned jobs) {
  std::vector<std::optional<ModularImage>> results(primes.size());
  if (jobs <= 1 || primes.size() <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) results[i] = worker.run(primes[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= primes.size()) return;
      results[i] = worker.run(primes[i]);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<std::size_t>(jobs, primes.size());
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return results;
}

struct PrimeSource {
  std::deque<std::uint64_t> forced;
  PrimeStream stream;
  std::set<std::uint64_t> used;

  PrimeSource(const EngineOptions& opts)
      : forced(opts.forced_primes.begin(), opts.forced_primes.end()),
        stream(opts.prime_bits, {}, opts.seed) {}

  std::uint64_t next() {
    while (!forced.empty()) {
      std::uint64_t p = forced.front();
      forced.pop_front();
      if (used.insert(p).second) return p;
    }
    while (true) {
      BigInt p = stream.next();  // throws ExhaustedError when spent
      std::uint64_t v = mpz_get_ui(p.get_mpz_t());
      if (used.insert(v).second) return v;
    }
  }
};

}  // namespace

std::string signature_key(const std::vector<std::string>& rows) {
  std::string key;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) key += ';';
    key += rows[i];
  }
  return key;
}

std::string run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::ok:
      return "ok";
    case RunStatus::inapplicable:
      return "inapplicable";
    case RunStatus::failed:
      return "failed";
    case RunStatus::done:
      return "done";
  }
  return "?";
}

RoundLimitError::RoundLimitError(RunReport rep)
    : Error("round limit exceeded after " + std::to_string(rep.rounds.size()) +
            " rounds"),
      report(std::move(rep)) {}

VoteOutcome majority_vote(const std::vector<ModularRun>& runs) {
  VoteOutcome out;
  std::map<std::string, std::vector<const ModularRun*>> groups;
  for (const auto& r : runs) {
    if (r.status != RunStatus::ok && r.status != RunStatus::done) continue;
    groups[signature_key(r.image->rows)].push_back(&r);
  }
  if (groups.empty()) throw NoUsableRunsError("no usable modular runs to vote on");

  const std::string* best = nullptr;
  unsigned best_count = 0;
  for (const auto& [key, members] : groups) {
    out.tally[key] = static_cast<unsigned>(members.size());
    // std::map iterates keys ascending: on ties the lexicographically
    // smallest serialized signature wins
    if (members.size() > best_count) {
      best = &key;
      best_count = static_cast<unsigned>(members.size());
    }
  }
  out.winner_key = *best;
  out.winner_rows = groups[*best].front()->image->rows;
  for (const auto& [key, members] : groups)
    for (const ModularRun* r : members)
      (key == out.winner_key ? out.supporters : out.discarded).push_back(r->prime);
  std::sort(out.supporters.begin(), out.supporters.end());
  std::sort(out.discarded.begin(), out.discarded.end());
  return out;
}

std::optional<RationalResult> lift_and_reconstruct(
    const std::vector<const ModularRun*>& supporters,
    const std::vector<std::string>& rows) {
  RationalResult out;
  out.rows = rows;
  if (supporters.empty()) return std::nullopt;

  std::vector<const ModularRun*> sorted = supporters;
  std::sort(sorted.begin(), sorted.end(),
            [](const ModularRun* a, const ModularRun* b) { return a->prime < b->prime; });

  // union of coefficient slots; a slot absent mod p contributes residue 0
  std::map<std::pair<std::string, std::string>, std::map<std::uint64_t, std::uint64_t>>
      slots;
  for (const ModularRun* r : sorted)
    for (const auto& c : r->image->cells) slots[{c.row, c.col}][r->prime] = c.value;

  for (const auto& [key, values] : slots) {
    std::optional<Residue> acc;
    for (const ModularRun* r : sorted) {
      auto it = values.find(r->prime);
      BigInt v(static_cast<unsigned long>(it == values.end() ? 0 : it->second));
      Residue part(v, BigInt(static_cast<unsigned long>(r->prime)));
      acc = acc ? crt_pair(*acc, part) : part;
    }
    std::optional<ReconResult> rec;
    try {
      rec = error_tolerant(*acc);
    } catch (const DivisionByZeroError&) {
      return std::nullopt;
    }
    if (!rec) return std::nullopt;
    if (!rec->value.is_zero()) out.cells[key] = rec->value;
  }
  return out;
}

ModularWorker inject_faults(const ModularWorker& worker, const FaultPlan& plan) {
  ModularWorker wrapped;
  wrapped.applicable = [inner = worker.applicable, plan](std::uint64_t p) {
    auto it = plan.find(p);
    if (it != plan.end() && it->second == FaultType::type1) return false;
    return inner(p);
  };
  wrapped.run = [inner = worker.run, plan](std::uint64_t p) -> std::optional<ModularImage> {
    auto it = plan.find(p);
    FaultType ft = it == plan.end() ? FaultType::none : it->second;
    if (ft == FaultType::type2) return std::nullopt;
    std::optional<ModularImage> img = inner(p);
    if (!img) return img;
    switch (ft) {
      case FaultType::type3:
        img->invariant = "injected:wrong";
        break;
      case FaultType::type4: {
        if (img->rows.empty()) break;
        std::string dropped = img->rows.back();  // smallest row key
        img->rows.pop_back();
        std::erase_if(img->cells, [&](const Cell& c) { return c.row == dropped; });
        break;
      }
      case FaultType::type5: {
        sort_cells(*img);
        for (auto& c : img->cells) {
          if (c.lead) continue;
          c.value = (c.value + 1) % p;
          break;
        }
        break;
      }
      default:
        break;
    }
    return img;
  };
  wrapped.verify = worker.verify;
  return wrapped;
}

RationalResult run_modular(const ModularWorker& worker, const EngineOptions& opts,
                           RunReport* report) {
  if (opts.prime_bits < 2 || opts.prime_bits > 63)
    throw Error("prime_bits must be in [2, 63]");
  auto t_total = Clock::now();
  RunReport rep;
  rep.seed = opts.seed;

  PrimeSource source(opts);
  std::vector<ModularRun> runs;
  std::size_t ok_target =
      opts.forced_primes.empty() ? std::max(1u, opts.initial_primes)
                                 : opts.forced_primes.size();

  auto count_ok = [&]() {
    return static_cast<std::size_t>(
        std::count_if(runs.begin(), runs.end(),
                      [](const ModularRun& r) { return r.status == RunStatus::ok; }));
  };

  auto snapshot_runs = [&](RoundInfo& ri) {
    ri.runs.clear();
    for (const auto& r : runs)
      ri.runs.push_back({r.prime, run_status_name(r.status), r.detail});
  };

  auto finish = [&](bool ok) {
    rep.ok = ok;
    rep.rounds_total = static_cast<unsigned>(rep.rounds.size());
    rep.total_ms = ms_since(t_total);
    if (report) *report = rep;
  };

  for (unsigned round = 1; round <= opts.max_rounds; ++round) {
    RoundInfo ri;
    ri.round = round;

    // step 1: top the ok-run pool up to the target
    auto t_worker = Clock::now();
    unsigned consecutive_unusable = 0;
    const unsigned unusable_cap = std::max<unsigned>(64, 8 * ok_target);
    auto note_unusable = [&]() {
      if (++consecutive_unusable >= unusable_cap && count_ok() == 0)
        throw WorkerNeverApplicableError("no usable prime found after " +
                                         std::to_string(consecutive_unusable) +
                                         " consecutive draws");
    };
    while (count_ok() < ok_target) {
      std::vector<std::uint64_t> batch;
      while (count_ok() + batch.size() < ok_target) {
        std::uint64_t p = source.next();
        if (!worker.applicable(p)) {
          runs.push_back({p, RunStatus::inapplicable, std::nullopt, "type 1: not applicable"});
          note_unusable();
          continue;
        }
        batch.push_back(p);
      }
      auto results = run_batch(worker, batch, opts.jobs);
      for (std::size_t i = 0; i < batch.size(); ++i) {
        ModularRun run;
        run.prime = batch[i];
        if (!results[i]) {
          run.status = RunStatus::failed;
          run.detail = "type 2: failure during the modular computation";
          note_unusable();
        } else if (opts.expected_invariant && results[i]->invariant &&
                   *results[i]->invariant != *opts.expected_invariant) {
          run.status = RunStatus::failed;
          run.detail = "type 3: invariant mismatch (" + *results[i]->invariant + ")";
          note_unusable();
        } else {
          sort_cells(*results[i]);
          run.status = RunStatus::ok;
          run.image = std::move(results[i]);
          consecutive_unusable = 0;
        }
        runs.push_back(std::move(run));
      }
    }
    rep.stage_ms.worker += ms_since(t_worker);

    // step 2: majority vote on signatures
    auto t_vote = Clock::now();
    VoteOutcome vote = majority_vote(runs);
    ri.tally = vote.tally;
    ri.winner_key = vote.winner_key;
    ri.supporters = vote.supporters;
    ri.discarded = vote.discarded;
    rep.stage_ms.vote += ms_since(t_vote);

    // steps 3 + 4: CRT lift and error-tolerant reconstruction
    auto t_lift = Clock::now();
    std::vector<const ModularRun*> supporters;
    for (const auto& r : runs)
      if (r.status == RunStatus::ok &&
          std::binary_search(vote.supporters.begin(), vote.supporters.end(), r.prime))
        supporters.push_back(&r);
    std::optional<RationalResult> candidate =
        lift_and_reconstruct(supporters, vote.winner_rows);
    rep.stage_ms.lift += ms_since(t_lift);

    if (!candidate) {
      ri.lift = "failed: some coefficient had no reconstruction below the bound";
      snapshot_runs(ri);
      rep.rounds.push_back(std::move(ri));
      ok_target *= 2;
      continue;
    }
    ri.lift = "ok";

    // step 5: extra-prime test, strict_extra fresh primes
    auto t_extra = Clock::now();
    bool test_ok = true;
    for (unsigned k = 0; k < std::max(1u, opts.strict_extra) && test_ok; ++k) {
      bool compared = false;
      for (unsigned attempt = 0; attempt < 16 && !compared; ++attempt) {
        std::uint64_t p = source.next();
        if (!worker.applicable(p)) continue;
        auto reduced = reduce_candidate(*candidate, p);
        if (!reduced) continue;  // p divides a denominator of the candidate
        auto image = worker.run(p);
        if (!image) continue;    // failed run tells us nothing about the lift
        ri.extra_test.primes.push_back(p);
        compared = true;
        if (signature_key(image->rows) != signature_key(candidate->rows) ||
            cell_map(*image) != *reduced)
          test_ok = false;
      }
      if (!compared) test_ok = false;  // could not find a usable extra prime
    }
    ri.extra_test.ok = test_ok;
    rep.stage_ms.extra_test += ms_since(t_extra);

    if (!test_ok) {
      snapshot_runs(ri);
      rep.rounds.push_back(std::move(ri));
      ok_target *= 2;
      continue;
    }

    // step 6: verification callback
    auto t_verify = Clock::now();
    bool verified = !worker.verify || worker.verify(*candidate);
    ri.verified = verified;
    rep.stage_ms.verify += ms_since(t_verify);

    if (!verified) {
      snapshot_runs(ri);
      rep.rounds.push_back(std::move(ri));
      ok_target *= 2;
      continue;
    }

    for (auto& r : runs)
      if (r.status == RunStatus::ok &&
          std::binary_search(vote.supporters.begin(), vote.supporters.end(), r.prime))
        r.status = RunStatus::done;
    ri.success = true;
    snapshot_runs(ri);
    rep.rounds.push_back(std::move(ri));
    finish(true);
    return *candidate;
  }

  finish(false);
  throw RoundLimitError(rep);
}

ModularWorker vector_worker(const std::vector<BigRat>& truth) {
  auto col_key = [](std::size_t i) {
    std::string s = std::to_string(i);
    return std::string(6 - std::min<std::size_t>(6, s.size()), '0') + s;
  };

  ModularWorker w;
  w.applicable = [truth](std::uint64_t p) {
    for (const auto& q : truth)
      if (mpz_fdiv_ui(q.den().get_mpz_t(), p) == 0) return false;
    return true;
  };
  w.run = [truth, col_key](std::uint64_t p) -> std::optional<ModularImage> {
    ModularImage img;
    img.rows = {"v"};
    for (std::size_t i = 0; i < truth.size(); ++i) {
      Residue r = rat_mod(truth[i], BigInt(static_cast<unsigned long>(p)));
      std::uint64_t v = mpz_get_ui(r.value.get_mpz_t());
      if (v != 0) img.cells.push_back({"v", col_key(i), v, false});
    }
    return img;
  };
  w.verify = [truth, col_key](const RationalResult& r) {
    if (r.rows != std::vector<std::string>{"v"}) return false;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      auto it = r.cells.find({"v", col_key(i)});
      BigRat got = it == r.cells.end() ? BigRat(0) : it->second;
      if (got != truth[i]) return false;
      if (!got.is_zero()) ++nonzero;
    }
    return nonzero == r.cells.size();  // no stray cells
  };
  return w;
}

}  // namespace modlift
