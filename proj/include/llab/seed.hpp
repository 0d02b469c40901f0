#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "llab/bytes.hpp"

namespace llab {

/// 32-byte seed. Every random choice in the library is a function of one of these.
struct Seed {
  std::array<std::uint8_t, 32> bytes{};

  static Seed from_hex(std::string_view hex);
  static Seed from_bytes(ByteView b);
  std::string hex() const { return to_hex(bytes); }

  auto operator<=>(const Seed&) const = default;
};

/// Sub-seed derivation:
///   SHA-256("llab.seed.v1" || 0x00 || parent || u16be(len(tag)) || tag || u64be(index))
/// The encoding is prefix-free, so distinct (tag, index) pairs never share a preimage.
Seed derive_seed(const Seed& parent, std::string_view role_tag, std::uint64_t index = 0);

namespace role {
inline constexpr std::string_view kChallenger = "challenger";
inline constexpr std::string_view kAdversary = "adversary";
inline constexpr std::string_view kTrial = "trial";
inline constexpr std::string_view kTransformer = "transformer";
}  // namespace role

}  // namespace llab
