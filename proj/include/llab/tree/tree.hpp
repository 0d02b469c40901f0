#pragma once

#include <optional>

#include "llab/ots/scheme.hpp"
#include "llab/primitives/family.hpp"
#include "llab/seed.hpp"

namespace llab::tree {

enum class Variant { merkle, xmss };

/// Depth-k binary tree over one-time key pairs. Nodes use heap numbering: the
/// root is 1, node w has children 2w and 2w+1, leaves are 2^k .. 2^(k+1)-1.
/// Every node carries its own OTS key pair; a parent signs the hash of its
/// children's encoded public keys, so the hash output width must equal the OTS
/// message width. The XMSS variant XORs the children with two per-level masks
/// (each as long as an encoded OTS public key) before hashing.
struct TreeParams {
  unsigned depth = 3;
  ots::SchemePtr ots;
  prim::FunctionFamilySpec hash;
  Variant variant = Variant::merkle;

  /// Throws std::invalid_argument on a broken rule.
  void validate() const;
  std::uint64_t leaves() const { return std::uint64_t{1} << depth; }
  std::uint64_t node_count() const { return (std::uint64_t{1} << (depth + 1)) - 1; }
  std::size_t mask_bytes() const;
};

/// Everything keygen produces. sk entries may be empty when only the public
/// side is known.
struct TreeMaterial {
  Bytes hash_key;
  /// Index 0 unused.
  std::vector<ots::KeyPair> nodes;
  /// One entry per level 0 .. k-1 (root level first): mask_L || mask_R.
  std::vector<Bytes> masks;
};

struct PathTriple {
  Bytes pk_left;
  Bytes pk_right;
  Bytes sig;
  bool operator==(const PathTriple&) const = default;
};

struct TreeSignature {
  std::uint64_t leaf_index = 0;
  Bytes leaf_sig;
  /// Leaf to root: triple t authenticates the children of the leaf's ancestor at depth k-1-t.
  std::vector<PathTriple> path;
};

struct TreePublicKey {
  Bytes hash_key;
  Bytes root_pk;
  std::vector<Bytes> masks;
};

/// Layouts (header = version || blob(scheme id)):
///   pk  = header || blob(hash key) || blob(root OTS pk) || u32 n || n x blob(mask)
///   sk  = header || blob(hash key) || u32 N || N x (blob(pk) || blob(sk)) || u32 n || n x blob(mask)
///   sig = header || u64 leaf || blob(leaf sig) || u32 k || k x (blob(pk_L) || blob(pk_R) || blob(sig))
class TreeScheme final : public ots::SignatureScheme {
 public:
  explicit TreeScheme(TreeParams p);
  const TreeParams& params() const { return p_; }

  std::string id() const override;
  bool stateful() const override { return true; }
  unsigned message_bits() const override { return p_.ots->message_bits(); }
  std::uint64_t capacity() const override { return p_.leaves(); }
  double keygen_randomness_bits() const override;
  std::size_t public_key_bytes() const override;

  /// Draw order: hash key, node key pairs 1 .. 2^(k+1)-1, masks level by level.
  ots::KeyPair keygen(RandomTape& tape) const override;
  /// Signs at leaf state.next_leaf and advances it.
  Bytes sign(ByteView sk, ByteView m, ots::SignerState& state) const override;
  bool verify(ByteView pk, ByteView m, ByteView sig) const override;

  TreeMaterial generate(RandomTape& tape) const;
  Bytes encode_pk(const TreeMaterial& t) const;
  Bytes encode_sk(const TreeMaterial& t) const;
  Bytes encode_sig(const TreeSignature& s) const;
  TreePublicKey decode_pk(ByteView pk) const;
  TreeMaterial decode_sk(ByteView sk) const;
  TreeSignature decode_sig(ByteView sig) const;

  /// Bytes fed to the hash for a node at `level` (root = 0).
  Bytes node_input(const std::vector<Bytes>& masks, unsigned level, ByteView pk_left, ByteView pk_right) const;
  Bytes node_message(const Bytes& hash_key, ByteView input) const;
  /// Signature at `leaf` without touching any state.
  TreeSignature sign_at(const TreeMaterial& t, std::uint64_t leaf, ByteView m) const;

  static unsigned level_of(std::uint64_t node);

 private:
  TreeParams p_;
};

std::shared_ptr<const TreeScheme> make_tree(TreeParams p);

// ---- signer state file -----------------------------------------------------

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateRecord {
  std::uint64_t next_leaf = 0;
  Seed tree_seed;
  bool operator==(const StateRecord&) const = default;
};

constexpr std::uint8_t kStateVersion = 1;

/// version (u8) || next_leaf (u64) || tree seed (32 bytes) || SHA-256 of everything before.
Bytes encode_state(const StateRecord& s);
/// Throws IntegrityError on a bad digest, version or length.
StateRecord decode_state(ByteView data);

}  // namespace llab::tree
