#pragma once

#include "llab/ots/scheme.hpp"
#include "llab/primitives/family.hpp"

namespace llab::ots {

struct LamportParams {
  unsigned message_bits = 16;
  prim::FunctionFamilySpec owf = prim::weak_owf(12);
};

/// sk holds 2l domain elements indexed by (i, b) at slot 2i + b; pk holds their
/// images. Signing m reveals sk[i, m_i] for every bit i, most significant first.
///
///   pk  = header || elements(2l, output bytes)
///   sk  = header || elements(2l, input bytes)
///   sig = header || elements(l, input bytes)
class Lamport final : public SignatureScheme {
 public:
  /// Throws std::invalid_argument unless l >= 1 and owf is an unkeyed fixed-input family.
  explicit Lamport(LamportParams p);

  const LamportParams& params() const { return p_; }
  std::string id() const override;
  unsigned message_bits() const override { return p_.message_bits; }
  double keygen_randomness_bits() const override { return 2.0 * p_.message_bits * p_.owf.input_bits; }
  std::size_t public_key_bytes() const override;

  /// sk elements are drawn in slot order.
  KeyPair keygen(RandomTape& tape) const override;
  Bytes sign(ByteView sk, ByteView m, SignerState& state) const override;
  bool verify(ByteView pk, ByteView m, ByteView sig) const override;

  static std::size_t slot(unsigned i, unsigned b) { return 2 * std::size_t{i} + b; }
  Bytes encode_pk(const std::vector<Bytes>& images) const;
  Bytes encode_sk(const std::vector<Bytes>& preimages) const;
  Bytes encode_sig(const std::vector<Bytes>& revealed) const;
  std::vector<Bytes> decode_pk(ByteView pk) const;
  std::vector<Bytes> decode_sk(ByteView sk) const;
  std::vector<Bytes> decode_sig(ByteView sig) const;
  Bytes image(ByteView x) const { return prim::eval(p_.owf, {}, x); }

 private:
  LamportParams p_;
};

std::shared_ptr<const Lamport> make_lamport(LamportParams p);

}  // namespace llab::ots
