#pragma once

#include <array>
#include <cstdint>

#include "llab/bytes.hpp"

namespace llab {

using Digest = std::array<std::uint8_t, 32>;

/// Incremental SHA-256 backed by OpenSSL.
class Sha256 {
 public:
  Sha256();
  Sha256& update(ByteView data);
  Sha256& update(std::string_view s);
  Digest finish();

 private:
  alignas(8) std::array<std::uint8_t, 112> state_;
};

Digest sha256(ByteView data);

inline Bytes digest_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }

}  // namespace llab
