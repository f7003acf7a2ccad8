#pragma once

#include <cstdint>
#include <stdexcept>

namespace vansum {

/// Exact coefficient type. Every arithmetic path goes through the checked
/// helpers below; overflow raises instead of wrapping.
using Coeff = std::int64_t;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coefficient overflow in addition");
  return r;
}

inline Coeff checked_sub(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("coefficient overflow in subtraction");
  return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coefficient overflow in multiplication");
  return r;
}

inline Coeff checked_neg(Coeff a) { return checked_sub(0, a); }

}  // namespace vansum
