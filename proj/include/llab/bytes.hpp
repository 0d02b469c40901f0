#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace llab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Raised when a byte string does not parse under the expected layout.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_hex(ByteView data);
/// Accepts upper or lower case; throws DecodeError on odd length or bad digits.
Bytes from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline bool equal(ByteView a, ByteView b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

Bytes concat(ByteView a, ByteView b);

/// Big-endian writer. put_blob writes a u32 length prefix.
class ByteWriter {
 public:
  ByteWriter& put_u8(std::uint8_t v);
  ByteWriter& put_u16(std::uint16_t v);
  ByteWriter& put_u32(std::uint32_t v);
  ByteWriter& put_u64(std::uint64_t v);
  ByteWriter& put_raw(ByteView data);
  ByteWriter& put_blob(ByteView data);
  ByteWriter& put_string(std::string_view s);

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  Bytes raw(std::size_t n);
  Bytes blob();
  std::string string();

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  /// Throws unless every byte was consumed.
  void expect_done() const;

 private:
  void need(std::size_t n) const;

  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace llab
