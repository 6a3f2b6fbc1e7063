#ifndef MODLIFT_CRT_HPP
#define MODLIFT_CRT_HPP

#include <utility>
#include <vector>

#include <modlift/bigint.hpp>

namespace modlift {

// Residues with pairwise coprime moduli; coprimality is checked eagerly on
// construction, violations are input errors.
class ResidueSystem {
 public:
  explicit ResidueSystem(std::vector<Residue> entries);

  const std::vector<Residue>& entries() const { return entries_; }

 private:
  std::vector<Residue> entries_;
};

// Combined residue mod a.modulus * b.modulus; throws ModuliNotCoprimeError.
Residue crt_pair(const Residue& a, const Residue& b);

// Left fold of crt_pair; throws EmptyInputError on zero entries.
Residue crt_list(const ResidueSystem& entries);

// Position-wise crt_list over columns (modulus, values). All value vectors
// must have equal length and the moduli must be pairwise coprime.
std::vector<Residue> crt_vector(
    const std::vector<std::pair<BigInt, std::vector<BigInt>>>& columns);

}  // namespace modlift

#endif  // MODLIFT_CRT_HPP
