#ifndef MODLIFT_ERRORS_HPP
#define MODLIFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modlift {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// gcd(a, m) != 1 in mod_inverse / field inversion.
struct NotInvertibleError : Error {
  using Error::Error;
};

struct ModuliNotCoprimeError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

struct LengthMismatchError : Error {
  using Error::Error;
};

// prime_stream cannot supply another prime of the requested size.
struct ExhaustedError : Error {
  using Error::Error;
};

// Shortest qualifying lattice vector has y == 0: no rational preimage.
struct DivisionByZeroError : Error {
  using Error::Error;
};

struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct UnknownVariableError : SyntaxError {
  UnknownVariableError(const std::string& name, std::size_t pos)
      : SyntaxError("unknown variable '" + name + "'", pos), name(name) {}
  std::string name;
};

// Zp elements from different prime fields mixed in one expression.
struct FieldMismatchError : Error {
  using Error::Error;
};

struct ZeroPolynomialError : Error {
  using Error::Error;
};

struct NoUsableRunsError : Error {
  using Error::Error;
};

struct WorkerNeverApplicableError : Error {
  using Error::Error;
};

}  // namespace modlift

#endif  // MODLIFT_ERRORS_HPP
