#include "vansum/simd.hpp"

#if VANSUM_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace vansum::simd::avx2 {

namespace {
constexpr std::size_t kLanes = 8;
}

__attribute__((target("avx2"))) void add_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    auto* a = reinterpret_cast<__m256i*>(acc.data() + i);
    const auto* r = reinterpret_cast<const __m256i*>(row.data() + i);
    _mm256_storeu_si256(a, _mm256_add_epi32(_mm256_loadu_si256(a), _mm256_loadu_si256(r)));
  }
  for (; i < n; ++i) acc[i] += row[i];
}

__attribute__((target("avx2"))) void sub_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    auto* a = reinterpret_cast<__m256i*>(acc.data() + i);
    const auto* r = reinterpret_cast<const __m256i*>(row.data() + i);
    _mm256_storeu_si256(a, _mm256_sub_epi32(_mm256_loadu_si256(a), _mm256_loadu_si256(r)));
  }
  for (; i < n; ++i) acc[i] -= row[i];
}

__attribute__((target("avx2"))) void axpy_i32(std::span<std::int32_t> acc, std::int32_t scale,
                                              std::span<const std::int32_t> row) {
  const std::size_t n = acc.size();
  const __m256i s = _mm256_set1_epi32(scale);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    auto* a = reinterpret_cast<__m256i*>(acc.data() + i);
    const auto* r = reinterpret_cast<const __m256i*>(row.data() + i);
    const __m256i prod = _mm256_mullo_epi32(_mm256_loadu_si256(r), s);
    _mm256_storeu_si256(a, _mm256_add_epi32(_mm256_loadu_si256(a), prod));
  }
  for (; i < n; ++i) acc[i] += scale * row[i];
}

__attribute__((target("avx2"))) bool all_zero_i32(std::span<const std::int32_t> v) {
  const std::size_t n = v.size();
  __m256i bits = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    bits = _mm256_or_si256(bits, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v.data() + i)));
  std::int32_t tail = 0;
  for (; i < n; ++i) tail |= v[i];
  return tail == 0 && _mm256_testz_si256(bits, bits) != 0;
}

}  // namespace vansum::simd::avx2

#endif
