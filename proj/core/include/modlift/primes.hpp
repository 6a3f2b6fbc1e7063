#ifndef MODLIFT_PRIMES_HPP
#define MODLIFT_PRIMES_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <modlift/bigint.hpp>

namespace modlift {

// Deterministic below 2^64 (fixed Miller-Rabin witness set 2..37); strong
// probable prime above, with error probability below 2^-128.
bool is_prime(const BigInt& n);
bool is_prime_u64(std::uint64_t n);

// Yields distinct primes of exactly `bit_size` bits, none in `exclude`,
// in an order that is deterministic for a fixed seed. Ranges up to 24 bits
// are enumerated and shuffled; larger ranges are rejection-sampled.
class PrimeStream {
 public:
  PrimeStream(unsigned bit_size, std::set<BigInt> exclude = {}, std::uint64_t seed = 0);

  BigInt next();  // throws ExhaustedError when the range is used up

 private:
  unsigned bits_;
  std::set<BigInt> used_;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> pool_;  // enumerated mode, consumed back to front
  bool enumerated_;
};

}  // namespace modlift

#endif  // MODLIFT_PRIMES_HPP
