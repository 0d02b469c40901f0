#include "llab/seed.hpp"

#include <algorithm>

#include "llab/sha256.hpp"

namespace llab {

Seed Seed::from_hex(std::string_view hex) {
  if (hex.size() != 64) throw DecodeError("seed must be 64 hex digits");
  return from_bytes(llab::from_hex(hex));
}

Seed Seed::from_bytes(ByteView b) {
  if (b.size() != 32) throw DecodeError("seed must be 32 bytes");
  Seed s;
  std::copy(b.begin(), b.end(), s.bytes.begin());
  return s;
}

Seed derive_seed(const Seed& parent, std::string_view role_tag, std::uint64_t index) {
  ByteWriter w;
  w.put_raw(to_bytes("llab.seed.v1"));
  w.put_u8(0);
  w.put_raw(parent.bytes);
  w.put_u16(static_cast<std::uint16_t>(role_tag.size()));
  w.put_raw(to_bytes(role_tag));
  w.put_u64(index);
  Seed out;
  out.bytes = sha256(w.bytes());
  return out;
}

}  // namespace llab
