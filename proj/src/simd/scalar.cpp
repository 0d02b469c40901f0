#include "llab/simd/kernels.hpp"

namespace llab::simd::scalar {

std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == value) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  std::size_t n = 0;
  for (std::uint32_t v : data) n += (v == value);
  return n;
}

void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] ^ b[i];
}

}  // namespace llab::simd::scalar
