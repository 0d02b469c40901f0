#pragma once

#include "llab/ots/scheme.hpp"
#include "llab/primitives/family.hpp"

namespace llab::ots {

/// Chains run c^0 = sk_j, c^i = f_{c^{i-1}}(x) over a PRF whose key and output
/// widths agree. x is drawn at keygen and published with the chain ends.
struct WotsParams {
  unsigned w = 4;
  unsigned message_bits = 16;
  prim::FunctionFamilySpec prf = prim::weak_prf(8);

  unsigned log_w() const;
  /// ceil(l / log2 w) message digits.
  unsigned l1() const;
  /// floor(log2(l1 (w-1)) / log2 w) + 1 checksum digits.
  unsigned l2() const;
  unsigned chain_count() const { return l1() + l2(); }
};

///   pk  = header || blob(x) || elements(L, key bytes)      chain ends c^{w-1}
///   sk  = header || blob(x) || elements(L, key bytes)      chain starts
///   sig = header || elements(L, key bytes)                 c^{b_j} per digit
class Wots final : public SignatureScheme {
 public:
  /// Throws std::invalid_argument unless w is a power of two >= 2 and the PRF
  /// has a fixed input and equal key and output widths.
  explicit Wots(WotsParams p);

  const WotsParams& params() const { return p_; }
  std::string id() const override;
  unsigned message_bits() const override { return p_.message_bits; }
  double keygen_randomness_bits() const override {
    return p_.prf.input_bits + static_cast<double>(p_.chain_count()) * p_.prf.key_bits;
  }
  std::size_t public_key_bytes() const override;

  /// Draws x first, then the chain starts in order.
  KeyPair keygen(RandomTape& tape) const override;
  Bytes sign(ByteView sk, ByteView m, SignerState& state) const override;
  bool verify(ByteView pk, ByteView m, ByteView sig) const override;

  /// l1 base-w message digits (most significant first) followed by l2 checksum digits.
  std::vector<unsigned> digits(ByteView m) const;
  /// `steps` applications of v -> f_v(x) starting from `start`.
  Bytes chain(ByteView x, ByteView start, unsigned steps) const;

  struct Material {
    Bytes x;
    std::vector<Bytes> chains;
  };
  Bytes encode_pk(const Material& m) const;
  Bytes encode_sk(const Material& m) const;
  Bytes encode_sig(const std::vector<Bytes>& values) const;
  Material decode_pk(ByteView pk) const;
  Material decode_sk(ByteView sk) const;
  std::vector<Bytes> decode_sig(ByteView sig) const;

 private:
  Bytes encode(const Material& m) const;
  Material decode(ByteView data) const;
  WotsParams p_;
};

std::shared_ptr<const Wots> make_wots(WotsParams p);

}  // namespace llab::ots
