// Built with -mavx2 on x86-64 only; callers reach it through the dispatcher.
#include <immintrin.h>

#include "llab/simd/kernels.hpp"

namespace llab::simd::avx2 {

std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  const __m256i needle = _mm256_set1_epi32(static_cast<int>(value));
  const std::size_t n = data.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data.data() + i));
    int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, needle)));
    if (mask != 0) return static_cast<std::ptrdiff_t>(i + __builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (data[i] == value) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value) {
  const __m256i needle = _mm256_set1_epi32(static_cast<int>(value));
  const std::size_t n = data.size();
  std::size_t i = 0;
  std::size_t count = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data.data() + i));
    int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, needle)));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) count += (data[i] == value);
  return count;
}

void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), _mm256_xor_si256(x, y));
  }
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

}  // namespace llab::simd::avx2
