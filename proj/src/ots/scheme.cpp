#include "llab/ots/scheme.hpp"

namespace llab::ots {

bool SignatureScheme::valid_message(ByteView m) const {
  const unsigned n = message_bits();
  if (n == 0) return true;
  if (m.size() != message_bytes()) return false;
  return n % 8 == 0 || (m[0] >> (n % 8)) == 0;
}

unsigned message_bit(ByteView m, unsigned n, unsigned i) {
  const unsigned pos = n - 1 - i;  // bit position counted from the least significant end
  const std::size_t byte = m.size() - 1 - pos / 8;
  return (m[byte] >> (pos % 8)) & 1u;
}

void put_header(ByteWriter& w, const std::string& scheme_id) {
  w.put_u8(kEncodingVersion);
  w.put_string(scheme_id);
}

void read_header(ByteReader& r, const std::string& scheme_id) {
  if (r.u8() != kEncodingVersion) throw DecodeError("unsupported encoding version");
  if (r.string() != scheme_id) throw DecodeError("encoded for a different scheme");
}

void put_elements(ByteWriter& w, const std::vector<Bytes>& elems, std::size_t width) {
  w.put_u32(static_cast<std::uint32_t>(elems.size()));
  w.put_u16(static_cast<std::uint16_t>(width));
  for (const Bytes& e : elems) {
    if (e.size() != width) throw std::invalid_argument("element has the wrong width");
    w.put_raw(e);
  }
}

std::vector<Bytes> read_elements(ByteReader& r, std::size_t count, std::size_t width) {
  if (r.u32() != count) throw DecodeError("wrong element count");
  if (r.u16() != width) throw DecodeError("wrong element width");
  std::vector<Bytes> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(r.raw(width));
  return out;
}

}  // namespace llab::ots
