#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "llab/bytes.hpp"
#include "llab/tape.hpp"

namespace llab::ots {

struct KeyPair {
  Bytes pk;
  Bytes sk;
};

/// Signing state for stateful schemes. Stateless schemes ignore it.
struct SignerState {
  std::uint64_t next_leaf = 0;
  bool operator==(const SignerState&) const = default;
};

class StateExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (KGen, Sign, Vrfy) over messages of message_bits bits, encoded big-endian in
/// ceil(message_bits/8) bytes. message_bits = 0 accepts any byte string.
class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;
  virtual std::string id() const = 0;
  virtual bool stateful() const { return false; }
  virtual unsigned message_bits() const = 0;
  /// Signatures one key can issue.
  virtual std::uint64_t capacity() const { return std::numeric_limits<std::uint64_t>::max(); }
  virtual double keygen_randomness_bits() const = 0;
  virtual std::size_t public_key_bytes() const = 0;

  /// Every random choice comes from `tape`.
  virtual KeyPair keygen(RandomTape& tape) const = 0;
  /// Throws std::invalid_argument for a message outside the message space and
  /// StateExhausted once a stateful key is used up.
  virtual Bytes sign(ByteView sk, ByteView m, SignerState& state) const = 0;
  /// Never throws; malformed inputs are rejected.
  virtual bool verify(ByteView pk, ByteView m, ByteView sig) const = 0;

  Bytes sign_once(ByteView sk, ByteView m) const {
    SignerState s;
    return sign(sk, m, s);
  }
  std::size_t message_bytes() const { return (message_bits() + 7) / 8; }
  bool valid_message(ByteView m) const;
};

using SchemePtr = std::shared_ptr<const SignatureScheme>;

/// Bit i of an n-bit big-endian message, i = 0 being the most significant.
unsigned message_bit(ByteView m, unsigned n, unsigned i);

// Shared key and signature layout:
//   version (u8 = 1) || blob(scheme id) || scheme-specific fields
// where an element array is u32 count || u16 element width || elements.
constexpr std::uint8_t kEncodingVersion = 1;

void put_header(ByteWriter& w, const std::string& scheme_id);
/// Throws DecodeError on a version or scheme-id mismatch.
void read_header(ByteReader& r, const std::string& scheme_id);
void put_elements(ByteWriter& w, const std::vector<Bytes>& elems, std::size_t width);
std::vector<Bytes> read_elements(ByteReader& r, std::size_t count, std::size_t width);

}  // namespace llab::ots
