#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "vansum/simd.hpp"

namespace vansum::simd {

namespace {

constexpr KernelTable kScalar{scalar::add_i32, scalar::sub_i32, scalar::axpy_i32, scalar::all_zero_i32};
#if VANSUM_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2{avx2::add_i32, avx2::sub_i32, avx2::axpy_i32, avx2::all_zero_i32};
#endif

Isa detect() {
  if (const char* env = std::getenv("VANSUM_ISA"); env != nullptr && std::string(env) == "scalar") return Isa::scalar;
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if VANSUM_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("instruction set not supported here: " + std::string(isa_name(isa)));
  current().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels() {
#if VANSUM_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

}  // namespace vansum::simd
