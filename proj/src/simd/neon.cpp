#include <arm_neon.h>

#include "llab/simd/kernels.hpp"

namespace llab::simd::neon {

std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  const uint32x4_t needle = vdupq_n_u32(value);
  const std::size_t n = data.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t eq = vceqq_u32(vld1q_u32(data.data() + i), needle);
    if (vmaxvq_u32(eq) != 0) {
      for (std::size_t j = i; j < i + 4; ++j) {
        if (data[j] == value) return static_cast<std::ptrdiff_t>(j);
      }
    }
  }
  for (; i < n; ++i) {
    if (data[i] == value) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  const uint32x4_t needle = vdupq_n_u32(value);
  const std::size_t n = data.size();
  std::size_t i = 0;
  std::size_t count = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t eq = vceqq_u32(vld1q_u32(data.data() + i), needle);
    count += vaddvq_u32(vshrq_n_u32(eq, 31));
  }
  for (; i < n; ++i) count += (data[i] == value);
  return count;
}

void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst.data() + i, veorq_u8(vld1q_u8(a.data() + i), vld1q_u8(b.data() + i)));
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

}  // namespace llab::simd::neon
