#include <atomic>
#include <stdexcept>
#include <string>

#include "llab/simd/kernels.hpp"

namespace llab::simd {

namespace {

Isa detect() {
#if defined(LLAB_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(LLAB_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

// -1 means "not pinned".
std::atomic<int> g_forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(LLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(LLAB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa best = detect();
  return best;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument("ISA not available: " + std::string(isa_name(isa)));
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  switch (active_isa()) {
#if defined(LLAB_HAVE_AVX2)
    case Isa::avx2: return avx2::find_first_eq_u32(data, value);
#endif
#if defined(LLAB_HAVE_NEON)
    case Isa::neon: return neon::find_first_eq_u32(data, value);
#endif
    default: return scalar::find_first_eq_u32(data, value);
  }
}

std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  switch (active_isa()) {
#if defined(LLAB_HAVE_AVX2)
    case Isa::avx2: return avx2::count_eq_u32(data, value);
#endif
#if defined(LLAB_HAVE_NEON)
    case Isa::neon: return neon::count_eq_u32(data, value);
#endif
    default: return scalar::count_eq_u32(data, value);
  }
}

void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != dst.size() || b.size() != dst.size()) throw std::invalid_argument("xor_bytes: length mismatch");
  switch (active_isa()) {
#if defined(LLAB_HAVE_AVX2)
    case Isa::avx2: return avx2::xor_bytes(dst, a, b);
#endif
#if defined(LLAB_HAVE_NEON)
    case Isa::neon: return neon::xor_bytes(dst, a, b);
#endif
    default: return scalar::xor_bytes(dst, a, b);
  }
}

}  // namespace llab::simd
