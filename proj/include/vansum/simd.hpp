#pragma once

// Residue-vector kernels used on the hot paths of the census search and the
// minimality scan: accumulate/retract a precomputed residue row and test the
// accumulator for zero.
//
// Each kernel has a scalar reference and, on x86-64, an AVX2 variant compiled
// with a target attribute. The active variant is chosen once at startup from
// CPUID; VANSUM_ISA=scalar in the environment forces the reference path.

#include <cstdint>
#include <span>
#include <string_view>

namespace vansum::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

/// Currently dispatched variant.
Isa active_isa();
/// Override dispatch (tests, benchmarks). Throws if the host lacks `isa`.
void set_isa(Isa isa);

namespace scalar {
void add_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row);
void sub_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row);
void axpy_i32(std::span<std::int32_t> acc, std::int32_t scale, std::span<const std::int32_t> row);
bool all_zero_i32(std::span<const std::int32_t> v);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define VANSUM_HAVE_AVX2_KERNELS 1
namespace avx2 {
void add_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row);
void sub_i32(std::span<std::int32_t> acc, std::span<const std::int32_t> row);
void axpy_i32(std::span<std::int32_t> acc, std::int32_t scale, std::span<const std::int32_t> row);
bool all_zero_i32(std::span<const std::int32_t> v);
}  // namespace avx2
#else
#define VANSUM_HAVE_AVX2_KERNELS 0
#endif

struct KernelTable {
  void (*add_i32)(std::span<std::int32_t>, std::span<const std::int32_t>);
  void (*sub_i32)(std::span<std::int32_t>, std::span<const std::int32_t>);
  void (*axpy_i32)(std::span<std::int32_t>, std::int32_t, std::span<const std::int32_t>);
  bool (*all_zero_i32)(std::span<const std::int32_t>);
};

/// Function table for the active variant. Callers on hot loops should copy
/// the table once rather than calling this per element.
const KernelTable& kernels();

}  // namespace vansum::simd
