#include <modlift/primes.hpp>

#include <algorithm>

namespace modlift {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

// One strong-probable-prime round for witness a; n odd, n > 2.
bool sprp_u64(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Deterministic for all n < 2^64 (Sorenson-Webster witness set).
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t a : kWitnesses)
    if (!sprp_u64(n, a)) return false;
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static const BigInt two64 = BigInt(1) << 64;
  if (n < two64) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  // 64 Miller-Rabin reps: error < 4^-64 = 2^-128.
  return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

PrimeStream::PrimeStream(unsigned bit_size, std::set<BigInt> exclude, std::uint64_t seed)
    : bits_(bit_size), used_(std::move(exclude)), rng_(seed) {
  if (bit_size < 2) throw Error("prime_stream bit_size must be >= 2");
  enumerated_ = bits_ <= 24;
  if (enumerated_) {
    std::uint64_t lo = bits_ == 2 ? 2 : (1ull << (bits_ - 1));
    std::uint64_t hi = (1ull << bits_) - 1;
    // segmented sieve over [lo, hi]
    std::vector<bool> composite(hi - lo + 1, false);
    for (std::uint64_t p = 2; p * p <= hi; ++p) {
      if (!is_prime_u64(p)) continue;
      std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = true;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (n >= 2 && !composite[n - lo]) pool_.push_back(n);
    std::shuffle(pool_.begin(), pool_.end(), rng_);
  }
}

BigInt PrimeStream::next() {
  if (enumerated_) {
    while (!pool_.empty()) {
      BigInt p(static_cast<unsigned long>(pool_.back()));
      pool_.pop_back();
      if (used_.insert(p).second) return p;
    }
    throw ExhaustedError("no more " + std::to_string(bits_) + "-bit primes");
  }
  // Rejection sampling over odd candidates with the top bit set.
  const unsigned max_attempts = 4096 * bits_;
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    BigInt c = 0;
    unsigned words = (bits_ + 63) / 64;
    for (unsigned w = 0; w < words; ++w) {
      c <<= 64;
      c += BigInt(static_cast<unsigned long>(rng_()));
    }
    c %= BigInt(1) << (bits_ - 1);
    c |= BigInt(1) << (bits_ - 1);  // exact bit length
    c |= 1;                         // odd
    if (used_.count(c)) continue;
    if (is_prime(c)) {
      used_.insert(c);
      return c;
    }
  }
  throw ExhaustedError("prime sampling exhausted at " + std::to_string(bits_) + " bits");
}

}  // namespace modlift
