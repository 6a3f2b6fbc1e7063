#include <CLI11.hpp>
#include <json.hpp>

#include <modlift/crt.hpp>
#include <modlift/gb_worker.hpp>
#include <modlift/reconstruct.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace modlift;
using nlohmann::json;

namespace {

// exit codes: 0 ok/found, 1 no preimage, 2 moduli not coprime,
// 3 input parse error, 4 round limit exceeded, 64 usage
constexpr int kExitNone = 1;
constexpr int kExitNotCoprime = 2;
constexpr int kExitParse = 3;
constexpr int kExitRoundLimit = 4;
constexpr int kExitUsage = 64;

BigInt arg_bigint(const std::string& text, const char* what) {
  try {
    return parse_bigint(text);
  } catch (const SyntaxError&) {
    std::cerr << "error: " << what << " must be an integer, got '" << text << "'\n";
    std::exit(kExitUsage);
  }
}

std::uint64_t env_seed() {
  const char* v = std::getenv("MODLIFT_SEED");
  if (!v) return 0;
  try {
    return std::stoull(v);
  } catch (...) {
    return 0;
  }
}

void print_steps(const std::vector<ReductionStep>& steps) {
  for (const auto& s : steps)
    std::cout << s.a1.str() << " = " << s.q.get_str(10) << "*" << s.a2.str() << " + "
              << s.rem.str() << "\n";
}

int cmd_farey(const std::string& r_text, const std::string& n_text) {
  BigInt r = arg_bigint(r_text, "r");
  BigInt n = arg_bigint(n_text, "N");
  if (n < 2 || r < 0 || r >= n) {
    std::cerr << "error: need 0 <= r < N and N >= 2\n";
    return kExitUsage;
  }
  auto v = farey_preimage(Residue(r, n));
  if (!v) {
    std::cout << "none\n";
    return kExitNone;
  }
  std::cout << v->str() << "\n";
  return 0;
}

int cmd_etr(const std::string& r_text, const std::string& n_text, bool verbose) {
  BigInt r = arg_bigint(r_text, "r");
  BigInt n = arg_bigint(n_text, "N");
  if (n < 2 || r < 0 || r >= n) {
    std::cerr << "error: need 0 <= r < N and N >= 2\n";
    return kExitUsage;
  }
  std::vector<ReductionStep> steps;
  auto rec = error_tolerant(Residue(r, n), verbose ? &steps : nullptr);
  if (verbose) print_steps(steps);
  if (!rec) {
    std::cout << "none\n";
    return kExitNone;
  }
  if (verbose) {
    std::cout << "shortest vector: " << rec->vector.str() << "\n";
    std::cout << "squared norm: " << to_string(rec->squared_norm) << "\n";
    std::cout << "gcd divided out: " << to_string(rec->reduced_by) << "\n";
    BigInt a = rec->value.num() < 0 ? BigInt(-rec->value.num()) : rec->value.num();
    BigInt b = rec->value.den();
    BigInt lhs = (a * a + b * b) * rec->reduced_by;
    BigInt rhs = n / rec->reduced_by;
    std::cout << "check: (" << to_string(a) << "^2+" << to_string(b) << "^2)*"
              << to_string(rec->reduced_by) << " = " << to_string(lhs) << " < "
              << to_string(rhs) << " = " << to_string(n) << "/"
              << to_string(rec->reduced_by) << "\n";
  }
  std::cout << rec->value.str() << "\n";
  return 0;
}

int cmd_crt(const std::vector<std::string>& pairs) {
  std::vector<Residue> entries;
  for (const auto& p : pairs) {
    auto colon = p.find(':');
    if (colon == std::string::npos) {
      std::cerr << "error: expected r:m, got '" << p << "'\n";
      return kExitUsage;
    }
    BigInt r = arg_bigint(p.substr(0, colon), "residue");
    BigInt m = arg_bigint(p.substr(colon + 1), "modulus");
    if (m < 2) {
      std::cerr << "error: modulus must be >= 2\n";
      return kExitUsage;
    }
    entries.emplace_back(r, m);
  }
  try {
    Residue out = crt_list(ResidueSystem(std::move(entries)));
    std::cout << out.str() << "\n";
  } catch (const ModuliNotCoprimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotCoprime;
  }
  return 0;
}

json report_json(const RunReport& rep) {
  json rounds = json::array();
  for (const auto& r : rep.rounds) {
    json runs = json::array();
    for (const auto& pr : r.runs)
      runs.push_back({{"prime", pr.prime}, {"status", pr.status}, {"detail", pr.detail}});
    rounds.push_back({{"round", r.round},
                      {"runs", runs},
                      {"tally", r.tally},
                      {"winner", r.winner_key},
                      {"supporters", r.supporters},
                      {"discarded", r.discarded},
                      {"lift", r.lift},
                      {"extra_test", {{"primes", r.extra_test.primes}, {"ok", r.extra_test.ok}}},
                      {"verified", r.verified},
                      {"success", r.success}});
  }
  return json{{"ok", rep.ok},
              {"seed", rep.seed},
              {"rounds_total", rep.rounds_total},
              {"rounds", rounds},
              {"result", rep.result_lines},
              {"stage_ms",
               {{"worker", rep.stage_ms.worker},
                {"vote", rep.stage_ms.vote},
                {"lift", rep.stage_ms.lift},
                {"extra_test", rep.stage_ms.extra_test},
                {"verify", rep.stage_ms.verify}}},
              {"total_ms", rep.total_ms}};
}

FaultPlan load_fault_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fault plan '" + path + "'");
  FaultPlan plan;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::uint64_t prime;
    int type;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (!(ls >> prime >> type) || type < 1 || type > 5)
      throw SyntaxError("fault plan line must be '<prime> <type 1..5>'", lineno);
    plan[prime] = static_cast<FaultType>(type);
  }
  return plan;
}

struct GbArgs {
  std::string input;
  std::string order_override;
  std::string mode = "rational";
  std::string inject_path;
  std::string report_path;
  std::string out_path;
  std::vector<std::uint64_t> primes;
  EngineOptions engine;
};

int cmd_gb(const GbArgs& args) {
  IdealFile ideal;
  try {
    ideal = load_ideal_file(args.input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (ideal.char_p != 0) {
    std::cerr << "error: gb expects a field: Q ideal file\n";
    return kExitParse;
  }
  Ring ring = ideal.ring;
  if (!args.order_override.empty()) {
    try {
      ring.order = ordering_from_name(args.order_override);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    // generators were sorted under the file order; rebuild under the override
    for (auto& f : ideal.gens) {
      std::vector<Term<BigRat>> terms(f.terms().begin(), f.terms().end());
      f = Poly<BigRat>::from_terms(std::move(terms), ring.order);
    }
  }

  EngineOptions opts = args.engine;
  opts.forced_primes = args.primes;

  std::vector<Poly<BigRat>> basis;
  RunReport report;
  try {
    if (args.mode == "rational") {
      auto t0 = std::chrono::steady_clock::now();
      basis = buchberger(ideal.gens, ring.order);
      report.ok = true;
      report.total_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    } else {
      FaultPlan plan;
      if (!args.inject_path.empty()) plan = load_fault_plan(args.inject_path);
      basis = modular_groebner(ideal.gens, ring.order, opts, plan, &report);
    }
  } catch (const RoundLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& round : e.report.rounds) {
      std::cerr << "  round " << round.round << ": lift=" << round.lift << " tally={";
      for (const auto& [sig, n] : round.tally) std::cerr << " " << n << "x[" << sig << "]";
      std::cerr << " }\n";
    }
    if (!args.report_path.empty()) {
      RunReport failed = e.report;
      std::ofstream out(args.report_path);
      out << report_json(failed).dump(2) << "\n";
    }
    return kExitRoundLimit;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }

  for (const auto& g : basis) report.result_lines.push_back(poly_str(g, ring));
  if (!args.report_path.empty()) {
    std::ofstream out(args.report_path);
    out << report_json(report).dump(2) << "\n";
  }
  if (args.out_path.empty()) {
    write_basis(std::cout, ring, 0, basis);
  } else {
    std::ofstream out(args.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << args.out_path << "'\n";
      return kExitUsage;
    }
    write_basis(out, ring, 0, basis);
  }
  return 0;
}

int cmd_bench(unsigned bits, unsigned trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto random_bits = [&](unsigned nbits) {
    BigInt v = 0;
    for (unsigned w = 0; w < (nbits + 63) / 64; ++w)
      v = (v << 64) + BigInt(static_cast<unsigned long>(rng()));
    v %= BigInt(1) << (nbits - 1);
    v |= BigInt(1) << (nbits - 1);
    return v;
  };
  std::vector<double> times;
  times.reserve(trials);
  for (unsigned i = 0; i < trials; ++i) {
    BigInt n = random_bits(bits);
    BigInt r = random_bits(bits) % n;
    auto t0 = std::chrono::steady_clock::now();
    auto rec = error_tolerant(Residue(r, n));
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    (void)rec;
    times.push_back(ms);
  }
  std::sort(times.begin(), times.end());
  double mean = 0;
  for (double t : times) mean += t;
  mean /= times.empty() ? 1 : times.size();
  double median = times.empty() ? 0 : times[times.size() / 2];
  std::cout << "bits trials mean_ms median_ms max_ms\n";
  std::cout << bits << " " << trials << " " << mean << " " << median << " "
            << (times.empty() ? 0 : times.back()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rational results from modular runs: CRT, rational "
               "reconstruction, error-tolerant lifting, Groebner bases"};
  app.require_subcommand(1);

  std::string r_text, n_text;
  bool verbose = false;
  auto* farey = app.add_subcommand("farey", "rational preimage of r in Z/N");
  farey->add_option("r", r_text, "residue")->required();
  farey->add_option("N", n_text, "modulus")->required();

  auto* etr = app.add_subcommand("etr", "error-tolerant rational reconstruction");
  etr->add_option("r", r_text, "residue")->required();
  etr->add_option("N", n_text, "modulus")->required();
  etr->add_flag("-v,--verbose", verbose, "print the reduction steps and checks");

  std::vector<std::string> pairs;
  auto* crt = app.add_subcommand("crt", "combine residues r:m by the CRT");
  crt->add_option("pairs", pairs, "residues as r:m")->required()->expected(-1);

  GbArgs gb;
  gb.engine.seed = env_seed();
  auto* gbc = app.add_subcommand("gb", "reduced Groebner basis of an ideal file");
  gbc->add_option("file", gb.input, "ideal file")->required();
  gbc->add_option("--order", gb.order_override, "override the file's ordering")
      ->check(CLI::IsMember({"lex", "deglex", "degrevlex"}));
  gbc->add_option("--mode", gb.mode, "rational (direct over Q) or modular")
      ->check(CLI::IsMember({"rational", "modular"}));
  gbc->add_option("--inject", gb.inject_path, "fault plan file: lines '<prime> <type>'");
  gbc->add_option("--report", gb.report_path, "write the JSON run report here");
  gbc->add_option("-o,--out", gb.out_path, "output basis file (default stdout)");
  gbc->add_option("--primes", gb.primes, "forced primes for the first round")
      ->delimiter(',');
  gbc->add_option("--initial-primes", gb.engine.initial_primes, "round-1 prime count");
  gbc->add_option("--prime-bits", gb.engine.prime_bits, "bit size of drawn primes");
  gbc->add_option("--max-rounds", gb.engine.max_rounds, "enlargement rounds before giving up");
  gbc->add_option("--strict-k", gb.engine.strict_extra, "extra primes tested in step 5");
  gbc->add_option("--seed", gb.engine.seed, "prime-stream seed (default $MODLIFT_SEED)");
  gbc->add_option("--jobs", gb.engine.jobs, "parallel modular runs");

  unsigned bench_bits = 500, bench_trials = 100;
  std::uint64_t bench_seed = env_seed();
  auto* bench = app.add_subcommand("bench", "time error-tolerant reconstruction");
  bench->add_option("--bits", bench_bits, "bit length of r and N")
      ->check(CLI::Range(8u, 100000u));
  bench->add_option("--trials", bench_trials, "number of reconstructions");
  bench->add_option("--seed", bench_seed, "input generator seed");

  CLI11_PARSE(app, argc, argv);

  if (farey->parsed()) return cmd_farey(r_text, n_text);
  if (etr->parsed()) return cmd_etr(r_text, n_text, verbose);
  if (crt->parsed()) return cmd_crt(pairs);
  if (gbc->parsed()) {
    if (!gb.inject_path.empty() && gb.mode != "modular") {
      std::cerr << "error: --inject needs --mode modular\n";
      return kExitUsage;
    }
    if (!gb.report_path.empty() && gb.mode != "modular") {
      std::cerr << "error: --report needs --mode modular\n";
      return kExitUsage;
    }
    return cmd_gb(gb);
  }
  if (bench->parsed()) return cmd_bench(bench_bits, bench_trials, bench_seed);
  return kExitUsage;
}
