#include <benchmark/benchmark.h>

#include <modlift/crt.hpp>
#include <modlift/groebner.hpp>
#include <modlift/poly_io.hpp>
#include <modlift/reconstruct.hpp>

#include <random>

using namespace modlift;

namespace {

BigInt random_bits(std::mt19937_64& rng, unsigned bits) {
  BigInt v = 0;
  for (unsigned w = 0; w < (bits + 63) / 64; ++w)
    v = (v << 64) + BigInt(static_cast<unsigned long>(rng()));
  v %= BigInt(1) << (bits - 1);
  v |= BigInt(1) << (bits - 1);
  return v;
}

void BM_ErrorTolerant(benchmark::State& state) {
  const unsigned bits = static_cast<unsigned>(state.range(0));
  std::mt19937_64 rng(12345);
  std::vector<Residue> inputs;
  for (int i = 0; i < 64; ++i) {
    BigInt n = random_bits(rng, bits);
    inputs.emplace_back(random_bits(rng, bits) % n, n);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    auto rec = error_tolerant(inputs[i++ % inputs.size()]);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_ErrorTolerant)->Arg(128)->Arg(500)->Arg(1000)->Arg(4000);

void BM_FareyPreimage(benchmark::State& state) {
  const unsigned bits = static_cast<unsigned>(state.range(0));
  std::mt19937_64 rng(54321);
  std::vector<Residue> inputs;
  for (int i = 0; i < 64; ++i) {
    BigInt n = random_bits(rng, bits);
    inputs.emplace_back(random_bits(rng, bits) % n, n);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    auto v = farey_preimage(inputs[i++ % inputs.size()]);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_FareyPreimage)->Arg(128)->Arg(500)->Arg(1000);

void BM_CrtList(benchmark::State& state) {
  const int parts = static_cast<int>(state.range(0));
  std::mt19937_64 rng(999);
  std::vector<Residue> entries;
  BigInt p = 1000003;
  for (int i = 0; i < parts; ++i) {
    while (true) {
      p += 2;
      BigInt g;
      bool ok = true;
      for (const auto& e : entries) {
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), e.modulus.get_mpz_t());
        if (g != 1) ok = false;
      }
      if (ok) break;
    }
    entries.emplace_back(BigInt(static_cast<unsigned long>(rng())) % p, p);
  }
  ResidueSystem sys(entries);
  for (auto _ : state) {
    Residue r = crt_list(sys);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CrtList)->Arg(8)->Arg(32)->Arg(128);

void BM_BuchbergerKatsura3Zp(benchmark::State& state) {
  Ring ring{{"u0", "u1", "u2", "u3"}, Ordering::degrevlex};
  std::vector<Poly<BigRat>> F{
      parse_poly("u0 + 2*u1 + 2*u2 + 2*u3 - 1", ring),
      parse_poly("u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 - u0", ring),
      parse_poly("2*u0*u1 + 2*u1*u2 + 2*u2*u3 - u1", ring),
      parse_poly("u1^2 + 2*u0*u2 + 2*u1*u3 - u2", ring)};
  std::vector<Poly<Zp>> Fp;
  for (const auto& f : F) Fp.push_back(reduce_mod_p(f, 32003).image);
  for (auto _ : state) {
    auto G = buchberger(Fp, ring.order);
    benchmark::DoNotOptimize(G);
  }
}
BENCHMARK(BM_BuchbergerKatsura3Zp);

}  // namespace

BENCHMARK_MAIN();
