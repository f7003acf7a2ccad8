#include "vansum/simd.hpp"

namespace vansum::simd::scalar {

void add_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += row[i];
}

void sub_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] -= row[i];
}

void axpy_i32(std::span<std::int32_t> acc, std::int32_t scale, std::span<const std::int32_t> row) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * row[i];
}

bool all_zero_i32(std::span<const std::int32_t> v) {
  std::int32_t bits = 0;
  for (auto x : v) bits |= x;
  return bits == 0;
}

}  // namespace vansum::simd::scalar
