#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricseq {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

/// A lattice vector in the plane (a ray, a character, a lattice point).
using Vec2 = std::array<Int, 2>;

/// Raised when caller-supplied data violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computed result contradicts an identity that must hold.
/// Never a valid outcome; indicates a bug or corrupted data.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Overflow-checked arithmetic. Coefficients stay tiny in every search we run,
// but an overflow must surface as an error and never wrap silently.
inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

/// Floor and ceiling of a / b for b != 0.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Int det2(const Vec2& u, const Vec2& v) {
  return checked_sub(checked_mul(u[0], v[1]), checked_mul(u[1], v[0]));
}

inline constexpr const char* kLibraryVersion = "0.1.0";

std::string to_string(const Vec2& v);
std::string to_string(const IntVec& v);

}  // namespace toricseq
