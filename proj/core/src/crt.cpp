#include <modlift/crt.hpp>

namespace modlift {

ResidueSystem::ResidueSystem(std::vector<Residue> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), entries_[i].modulus.get_mpz_t(),
              entries_[j].modulus.get_mpz_t());
      if (g != 1)
        throw ModuliNotCoprimeError("moduli " + to_string(entries_[i].modulus) + " and " +
                                    to_string(entries_[j].modulus) + " share factor " +
                                    to_string(g));
    }
}

Residue crt_pair(const Residue& a, const Residue& b) {
  ExtGcd e = ext_gcd(a.modulus, b.modulus);
  if (e.g != 1)
    throw ModuliNotCoprimeError("moduli " + to_string(a.modulus) + " and " +
                                to_string(b.modulus) + " share factor " + to_string(e.g));
  // x = a + ma * ((b - a) * ma^{-1} mod mb)
  BigInt diff = b.value - a.value;
  BigInt t = (diff * e.u) % b.modulus;
  return Residue(a.value + a.modulus * t, a.modulus * b.modulus);
}

Residue crt_list(const ResidueSystem& sys) {
  const auto& entries = sys.entries();
  if (entries.empty()) throw EmptyInputError("crt_list needs at least one residue");
  Residue acc = entries.front();
  for (std::size_t i = 1; i < entries.size(); ++i) acc = crt_pair(acc, entries[i]);
  return acc;
}

std::vector<Residue> crt_vector(
    const std::vector<std::pair<BigInt, std::vector<BigInt>>>& columns) {
  if (columns.empty()) throw EmptyInputError("crt_vector needs at least one column");
  std::size_t len = columns.front().second.size();
  for (const auto& [m, vals] : columns)
    if (vals.size() != len)
      throw LengthMismatchError("crt_vector columns of unequal length");

  std::vector<Residue> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<Residue> entries;
    entries.reserve(columns.size());
    for (const auto& [m, vals] : columns) entries.emplace_back(vals[i], m);
    out.push_back(crt_list(ResidueSystem(std::move(entries))));
  }
  return out;
}

}  // namespace modlift
