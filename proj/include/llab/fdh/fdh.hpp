#pragma once

#include <optional>

#include "llab/fdh/oracle.hpp"
#include "llab/game/game.hpp"
#include "llab/ots/scheme.hpp"

namespace llab::fdh {

/// Full-domain hash over the RSA-style permutation: sigma = f_pk^-1(H(m)).
///
/// H is a seeded lazy oracle onto Z_N*; the value for key N at m is fixed by
/// (oracle seed, N, m), so the scheme is a pure function of its inputs.
///   pk  = header || blob(N) || blob(e)
///   sk  = header || blob(N) || blob(e) || blob(d) || blob(p) || blob(q)
///   sig = header || blob(sigma), sigma padded to the byte length of N
class FdhScheme final : public ots::SignatureScheme {
 public:
  FdhScheme(unsigned modulus_bits, const Seed& oracle_seed);

  std::string id() const override;
  unsigned message_bits() const override { return 0; }
  double keygen_randomness_bits() const override { return 256.0; }
  std::size_t public_key_bytes() const override;

  /// 32 draws of 256 form the keygen seed.
  ots::KeyPair keygen(RandomTape& tape) const override;
  Bytes sign(ByteView sk, ByteView m, ots::SignerState& state) const override;
  bool verify(ByteView pk, ByteView m, ByteView sig) const override;

  BigInt hash(const prim::TdpPublicKey& pk, ByteView m) const;
  Bytes encode_pk(const prim::TdpPublicKey& pk) const;
  Bytes encode_sk(const prim::TdpKeyPair& kp) const;
  Bytes encode_sig(const prim::TdpPublicKey& pk, const BigInt& sigma) const;
  prim::TdpPublicKey decode_pk(ByteView pk) const;
  prim::TdpKeyPair decode_sk(ByteView sk) const;
  BigInt decode_sig(ByteView sig) const;

 private:
  unsigned bits_;
  Seed oracle_seed_;
};

std::shared_ptr<const FdhScheme> instantiate_fdh(unsigned modulus_bits, const Seed& oracle_seed);

/// Forgery game for FDH with the hash as an oracle held by the challenger.
///
///   C: 'K' || blob(N) || blob(e)
///   A: 'H' || m               C: 'h' || H(m)
///   A: 'S' || m               C: 'G' || sigma
///   A: 'F' || blob(m*) || blob(sigma*)
///
/// Values are padded to the byte length of N. Every fresh oracle value (hash
/// query, signing query or the final check) is a sample_unit draw on the
/// challenger tape, taken when the point is first needed. succ iff
/// f(sigma*) = H(m*) and m* was never a signing query. Queries beyond the
/// bounds are flagged.
///
/// The stand-in flavor is the same game under another id: it plays the role of
/// the quantum-query forgery game for interpreter tests, with classical queries.
struct RoGameParams {
  enum class Flavor { classical, quantum_stand_in };
  unsigned modulus_bits = 12;
  std::size_t max_hash_queries = 8;
  std::size_t max_sign_queries = 0;
  Flavor flavor = Flavor::classical;
};

game::GamePtr ro_forgery_game(const RoGameParams& p);
std::string ro_forgery_interface(const RoGameParams& p);

Bytes hash_query(ByteView m);
Bytes sign_query(ByteView m);
Bytes forgery_reply(ByteView m, ByteView sigma);

/// Parses 'K' || blob(N) || blob(e). Throws DecodeError.
prim::TdpPublicKey parse_key_message(ByteView msg, unsigned modulus_bits);
/// Parses 'h' or 'G' answers into an integer. Throws DecodeError on another tag.
BigInt parse_value(ByteView msg, std::uint8_t tag);

}  // namespace llab::fdh
