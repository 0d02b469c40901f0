#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace llab::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best supported variant, unless a test has pinned one with force_isa.
Isa active_isa();
/// Pins the dispatch target. Throws std::invalid_argument if the CPU lacks it.
void force_isa(Isa isa);
void reset_isa();

/// Index of the first element equal to value, or -1.
std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
/// dst[i] = a[i] ^ b[i]; all three spans have the same length.
void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Per-variant entry points, exposed for the equivalence tests.
namespace scalar {
std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
}  // namespace scalar

namespace avx2 {
std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
}  // namespace avx2

namespace neon {
std::ptrdiff_t find_first_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
std::size_t count_eq_u32(std::span<const std::uint32_t> data, std::uint32_t value);
void xor_bytes(std::span<std::uint8_t> dst, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
}  // namespace neon

}  // namespace llab::simd
