#ifndef MODLIFT_ENGINE_HPP
#define MODLIFT_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <modlift/bigint.hpp>

namespace modlift {

// One coefficient slot of a modular result. `row` keys the generator (for
// Groebner bases: the serialized lead monomial), `col` the coefficient
// position inside it. `lead` marks the slot that defines the row key.
struct Cell {
  std::string row;
  std::string col;
  std::uint64_t value;
  bool lead = false;
};

// Result of one per-prime worker run. The vote key is `rows` (ordered);
// cells hold the residues. `invariant` is the optional type-3 hook: a
// declared invariant value checked against EngineOptions::expected_invariant.
struct ModularImage {
  std::vector<std::string> rows;
  std::vector<Cell> cells;
  std::optional<std::string> invariant;
};

std::string signature_key(const std::vector<std::string>& rows);

enum class RunStatus { ok, inapplicable, failed, done };
std::string run_status_name(RunStatus s);

struct ModularRun {
  std::uint64_t prime = 0;
  RunStatus status = RunStatus::failed;
  std::optional<ModularImage> image;  // present iff status is ok or done
  std::string detail;
};

// The lifted and reconstructed rational result, still in generic cell form.
// Absent cells are zero.
struct RationalResult {
  std::vector<std::string> rows;
  std::map<std::pair<std::string, std::string>, BigRat> cells;

  friend bool operator==(const RationalResult& a, const RationalResult& b) {
    return a.rows == b.rows && a.cells == b.cells;
  }
};

// A deterministic per-prime computation: same prime + same input gives an
// identical image. `run` returning nullopt reports an in-algorithm failure
// (type 2); `applicable` is the cheap type-1 guard; `verify` is the step-6
// certificate for a fully reconstructed candidate.
struct ModularWorker {
  std::function<bool(std::uint64_t)> applicable;
  std::function<std::optional<ModularImage>(std::uint64_t)> run;
  std::function<bool(const RationalResult&)> verify;
};

struct VoteOutcome {
  std::vector<std::string> winner_rows;
  std::string winner_key;
  std::vector<std::uint64_t> supporters;  // ascending
  std::vector<std::uint64_t> discarded;   // ok primes with a losing signature
  std::map<std::string, unsigned> tally;
};

// Majority vote over the ok runs, deterministic tie-break by lexicographically
// smallest serialized signature. Throws NoUsableRunsError without an ok run.
VoteOutcome majority_vote(const std::vector<ModularRun>& runs);

// Steps 3 + 4: coefficient-wise CRT over the supporters (absent cells are
// zero residues), then error-tolerant rational reconstruction per cell.
// nullopt means the lift failed and the prime set must grow.
std::optional<RationalResult> lift_and_reconstruct(
    const std::vector<const ModularRun*>& supporters,
    const std::vector<std::string>& rows);

enum class FaultType { none = 0, type1 = 1, type2 = 2, type3 = 3, type4 = 4, type5 = 5 };
using FaultPlan = std::map<std::uint64_t, FaultType>;

// Wraps a worker so that planned primes misbehave: type1 inapplicable,
// type2 failing, type3 declaring a wrong invariant, type4 dropping the
// smallest row (signature change), type5 perturbing one non-lead coefficient
// (signature preserved). Unplanned primes pass through bit-identically.
ModularWorker inject_faults(const ModularWorker& worker, const FaultPlan& plan);

struct EngineOptions {
  unsigned initial_primes = 4;  // r0; a forced prime list overrides round 1
  unsigned prime_bits = 60;
  unsigned max_rounds = 10;
  unsigned strict_extra = 1;  // extra primes tested in step 5
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::vector<std::uint64_t> forced_primes;
  std::optional<std::string> expected_invariant;  // type-3 hook
};

struct PrimeRunInfo {
  std::uint64_t prime;
  std::string status;
  std::string detail;
};

struct ExtraTestInfo {
  std::vector<std::uint64_t> primes;
  bool ok = false;
};

struct RoundInfo {
  unsigned round = 0;
  std::vector<PrimeRunInfo> runs;  // cumulative statuses at the end of the round
  std::map<std::string, unsigned> tally;
  std::string winner_key;
  std::vector<std::uint64_t> supporters;
  std::vector<std::uint64_t> discarded;
  std::string lift;  // "ok" or "failed: ..."
  ExtraTestInfo extra_test;
  bool verified = false;
  bool success = false;
};

struct StageMillis {
  double worker = 0, vote = 0, lift = 0, extra_test = 0, verify = 0;
};

struct RunReport {
  bool ok = false;
  std::uint64_t seed = 0;
  unsigned rounds_total = 0;
  std::vector<RoundInfo> rounds;
  std::vector<std::string> result_lines;  // filled by the caller that owns printing
  StageMillis stage_ms;
  double total_ms = 0;
};

struct RoundLimitError : Error {
  explicit RoundLimitError(RunReport rep);
  RunReport report;
};

// The full scheme: per-prime runs, majority vote, CRT lift, error-tolerant
// reconstruction, extra-prime test, verification callback, and geometric
// enlargement of the prime set on any failure.
RationalResult run_modular(const ModularWorker& worker, const EngineOptions& opts,
                           RunReport* report = nullptr);

// Identity worker over a fixed rational vector; exercises the whole pipeline
// with the simplest possible signature.
ModularWorker vector_worker(const std::vector<BigRat>& truth);

}  // namespace modlift

#endif  // MODLIFT_ENGINE_HPP
