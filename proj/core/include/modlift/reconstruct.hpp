#ifndef MODLIFT_RECONSTRUCT_HPP
#define MODLIFT_RECONSTRUCT_HPP

#include <optional>
#include <utility>
#include <vector>

#include <modlift/bigint.hpp>

namespace modlift {

struct Vec2 {
  BigInt x, y;
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  std::string str() const { return "(" + to_string(x) + "," + to_string(y) + ")"; }
};

inline BigInt dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline BigInt norm2(const Vec2& a) { return dot(a, a); }

// Two-dimensional lattice basis; for reconstruction the lattice is
// <(N,0),(r,1)> and |det| stays N through every reduction step.
struct LatticeBasis2 {
  Vec2 v1, v2;
};

// One reduction step: a1 = q * a2 + rem, followed by (a1, a2) <- (a2, rem).
struct ReductionStep {
  Vec2 a1, a2;
  BigInt q;
  Vec2 rem;
};

// Nearest integer to num/den (den > 0 required), ties to even.
BigInt round_nearest(const BigInt& num, const BigInt& den);

// Shortest nonzero vector of the lattice spanned by the basis. Reduces with
// q = round(<a1,a2>/<a2,a2>) and swaps until <a1,a1> <= <a2,a2>.
Vec2 gauss_lagrange(const LatticeBasis2& basis, std::vector<ReductionStep>* trace = nullptr);

// Classical rational reconstruction: the unique a/b with gcd(a,b) = 1,
// gcd(b,N) = 1, |a|,|b| <= sqrt((N-1)/2) mapping to r, or absent.
std::optional<BigRat> farey_preimage(const Residue& r);

struct ReconResult {
  BigRat value;        // x/y in lowest terms, positive denominator
  BigInt squared_norm; // x^2 + y^2 of the found vector, before gcd reduction
  BigInt reduced_by;   // gcd(x, y); divides the bad-prime product M
  Vec2 vector;         // the shortest vector as found
};

// Reconstruction that tolerates wrong residues at bad primes: reduces
// <(N,0),(r,1)>; if the shortest vector (x,y) has x^2 + y^2 < N, returns
// x/y reduced. Throws DivisionByZeroError if that vector had y == 0.
std::optional<ReconResult> error_tolerant(const Residue& r,
                                          std::vector<ReductionStep>* trace = nullptr);

}  // namespace modlift

#endif  // MODLIFT_RECONSTRUCT_HPP
