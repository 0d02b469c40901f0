#include "llab/tree/tree.hpp"

#include <bit>

#include "llab/primitives/games.hpp"
#include "llab/sha256.hpp"
#include "llab/simd/kernels.hpp"

namespace llab::tree {

using ots::KeyPair;

void TreeParams::validate() const {
  if (depth < 1 || depth > 20) throw std::invalid_argument("tree depth must lie in [1, 20]");
  if (!ots) throw std::invalid_argument("tree needs a one-time scheme");
  if (ots->stateful()) throw std::invalid_argument("tree nodes need a stateless one-time scheme");
  hash.validate();
  if (ots->message_bits() == 0 || hash.output_bits != ots->message_bits()) {
    throw std::invalid_argument("hash output width must equal the OTS message width");
  }
  if (hash.fixed_input()) throw std::invalid_argument("tree hash must take variable-length input");
  if (variant == Variant::xmss && hash.kind != prim::Kind::spr_hash) {
    throw std::invalid_argument("the masked tree needs a second-preimage resistant hash");
  }
}

std::size_t TreeParams::mask_bytes() const { return 2 * ots->public_key_bytes(); }

TreeScheme::TreeScheme(TreeParams p) : p_(std::move(p)) { p_.validate(); }

std::string TreeScheme::id() const {
  return std::string(p_.variant == Variant::merkle ? "merkle" : "xmss-tree") + "/v1[k=" + std::to_string(p_.depth) +
         ";" + p_.ots->id() + ";" + prim::spec_tag(p_.hash) + "]";
}

double TreeScheme::keygen_randomness_bits() const {
  double bits = p_.hash.key_bits + static_cast<double>(p_.node_count()) * p_.ots->keygen_randomness_bits();
  if (p_.variant == Variant::xmss) bits += 8.0 * p_.depth * p_.mask_bytes();
  return bits;
}

std::size_t TreeScheme::public_key_bytes() const {
  TreeMaterial t;
  t.hash_key = Bytes(p_.hash.key_bytes());
  t.nodes.resize(2);
  t.nodes[1].pk = Bytes(p_.ots->public_key_bytes());
  if (p_.variant == Variant::xmss) t.masks.assign(p_.depth, Bytes(p_.mask_bytes()));
  return encode_pk(t).size();
}

unsigned TreeScheme::level_of(std::uint64_t node) { return 63 - static_cast<unsigned>(std::countl_zero(node)); }

TreeMaterial TreeScheme::generate(RandomTape& tape) const {
  TreeMaterial t;
  t.hash_key = prim::sample_key(p_.hash, tape);
  t.nodes.resize(p_.node_count() + 1);
  for (std::uint64_t w = 1; w <= p_.node_count(); ++w) t.nodes[w] = p_.ots->keygen(tape);
  if (p_.variant == Variant::xmss) {
    for (unsigned d = 0; d < p_.depth; ++d) t.masks.push_back(tape.bytes(p_.mask_bytes()));
  }
  return t;
}

KeyPair TreeScheme::keygen(RandomTape& tape) const {
  TreeMaterial t = generate(tape);
  return {encode_pk(t), encode_sk(t)};
}

Bytes TreeScheme::node_input(const std::vector<Bytes>& masks, unsigned level, ByteView pk_left,
                             ByteView pk_right) const {
  Bytes in = concat(pk_left, pk_right);
  if (p_.variant == Variant::xmss) {
    const Bytes& mask = masks.at(level);
    if (mask.size() != in.size()) throw DecodeError("children do not match the mask width");
    simd::xor_bytes(in, in, mask);
  }
  return in;
}

Bytes TreeScheme::node_message(const Bytes& hash_key, ByteView input) const {
  return prim::eval(p_.hash, hash_key, input);
}

TreeSignature TreeScheme::sign_at(const TreeMaterial& t, std::uint64_t leaf, ByteView m) const {
  if (leaf >= p_.leaves()) throw ots::StateExhausted("all " + std::to_string(p_.leaves()) + " leaves are used");
  if (!valid_message(m)) throw std::invalid_argument("message outside the tree message space");
  TreeSignature s;
  s.leaf_index = leaf;
  std::uint64_t w = p_.leaves() + leaf;
  s.leaf_sig = p_.ots->sign_once(t.nodes[w].sk, m);
  for (w >>= 1; w >= 1; w >>= 1) {
    const Bytes& l = t.nodes[2 * w].pk;
    const Bytes& r = t.nodes[2 * w + 1].pk;
    Bytes msg = node_message(t.hash_key, node_input(t.masks, level_of(w), l, r));
    s.path.push_back({l, r, p_.ots->sign_once(t.nodes[w].sk, msg)});
  }
  return s;
}

Bytes TreeScheme::sign(ByteView sk, ByteView m, ots::SignerState& state) const {
  if (state.next_leaf >= p_.leaves()) throw ots::StateExhausted("all " + std::to_string(p_.leaves()) + " leaves are used");
  TreeMaterial t = decode_sk(sk);
  Bytes out = encode_sig(sign_at(t, state.next_leaf, m));
  ++state.next_leaf;
  return out;
}

bool TreeScheme::verify(ByteView pk, ByteView m, ByteView sig) const {
  if (!valid_message(m)) return false;
  try {
    TreePublicKey key = decode_pk(pk);
    TreeSignature s = decode_sig(sig);
    if (s.leaf_index >= p_.leaves()) return false;
    const std::uint64_t leaf = p_.leaves() + s.leaf_index;
    const auto& first = s.path[0];
    if (!p_.ots->verify((leaf & 1) ? first.pk_right : first.pk_left, m, s.leaf_sig)) return false;
    for (unsigned t = 0; t < p_.depth; ++t) {
      const std::uint64_t w = leaf >> (t + 1);
      const Bytes& pk_w = (t + 1 < p_.depth) ? ((w & 1) ? s.path[t + 1].pk_right : s.path[t + 1].pk_left) : key.root_pk;
      Bytes msg = node_message(key.hash_key, node_input(key.masks, level_of(w), s.path[t].pk_left, s.path[t].pk_right));
      if (!p_.ots->verify(pk_w, msg, s.path[t].sig)) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Bytes TreeScheme::encode_pk(const TreeMaterial& t) const {
  ByteWriter w;
  ots::put_header(w, id());
  w.put_blob(t.hash_key).put_blob(t.nodes.at(1).pk);
  w.put_u32(static_cast<std::uint32_t>(t.masks.size()));
  for (const Bytes& m : t.masks) w.put_blob(m);
  return w.take();
}

Bytes TreeScheme::encode_sk(const TreeMaterial& t) const {
  ByteWriter w;
  ots::put_header(w, id());
  w.put_blob(t.hash_key);
  w.put_u32(static_cast<std::uint32_t>(t.nodes.size() - 1));
  for (std::size_t i = 1; i < t.nodes.size(); ++i) w.put_blob(t.nodes[i].pk).put_blob(t.nodes[i].sk);
  w.put_u32(static_cast<std::uint32_t>(t.masks.size()));
  for (const Bytes& m : t.masks) w.put_blob(m);
  return w.take();
}

Bytes TreeScheme::encode_sig(const TreeSignature& s) const {
  ByteWriter w;
  ots::put_header(w, id());
  w.put_u64(s.leaf_index).put_blob(s.leaf_sig);
  w.put_u32(static_cast<std::uint32_t>(s.path.size()));
  for (const auto& t : s.path) w.put_blob(t.pk_left).put_blob(t.pk_right).put_blob(t.sig);
  return w.take();
}

namespace {

std::vector<Bytes> read_masks(ByteReader& r, const TreeParams& p) {
  const std::size_t n = r.u32();
  const std::size_t want = p.variant == Variant::xmss ? p.depth : 0;
  if (n != want) throw DecodeError("wrong mask count");
  std::vector<Bytes> masks;
  for (std::size_t i = 0; i < n; ++i) {
    masks.push_back(r.blob());
    if (masks.back().size() != p.mask_bytes()) throw DecodeError("wrong mask width");
  }
  return masks;
}

}  // namespace

TreePublicKey TreeScheme::decode_pk(ByteView pk) const {
  ByteReader r(pk);
  ots::read_header(r, id());
  TreePublicKey k;
  k.hash_key = r.blob();
  if (k.hash_key.size() != p_.hash.key_bytes()) throw DecodeError("wrong hash key width");
  k.root_pk = r.blob();
  k.masks = read_masks(r, p_);
  r.expect_done();
  return k;
}

TreeMaterial TreeScheme::decode_sk(ByteView sk) const {
  ByteReader r(sk);
  ots::read_header(r, id());
  TreeMaterial t;
  t.hash_key = r.blob();
  if (r.u32() != p_.node_count()) throw DecodeError("wrong node count");
  t.nodes.resize(p_.node_count() + 1);
  for (std::uint64_t i = 1; i <= p_.node_count(); ++i) {
    t.nodes[i].pk = r.blob();
    t.nodes[i].sk = r.blob();
  }
  t.masks = read_masks(r, p_);
  r.expect_done();
  return t;
}

TreeSignature TreeScheme::decode_sig(ByteView sig) const {
  ByteReader r(sig);
  ots::read_header(r, id());
  TreeSignature s;
  s.leaf_index = r.u64();
  s.leaf_sig = r.blob();
  if (r.u32() != p_.depth) throw DecodeError("wrong path length");
  for (unsigned i = 0; i < p_.depth; ++i) {
    PathTriple t;
    t.pk_left = r.blob();
    t.pk_right = r.blob();
    t.sig = r.blob();
    s.path.push_back(std::move(t));
  }
  r.expect_done();
  return s;
}

std::shared_ptr<const TreeScheme> make_tree(TreeParams p) { return std::make_shared<TreeScheme>(std::move(p)); }

// ---- state file ------------------------------------------------------------

Bytes encode_state(const StateRecord& s) {
  ByteWriter w;
  w.put_u8(kStateVersion).put_u64(s.next_leaf).put_raw(ByteView(s.tree_seed.bytes.data(), s.tree_seed.bytes.size()));
  Bytes body = w.take();
  Digest d = sha256(body);
  body.insert(body.end(), d.begin(), d.end());
  return body;
}

StateRecord decode_state(ByteView data) {
  constexpr std::size_t kBody = 1 + 8 + 32;
  if (data.size() != kBody + 32) throw IntegrityError("state file has the wrong length");
  Digest d = sha256(data.first(kBody));
  if (!equal(ByteView(d.data(), d.size()), data.subspan(kBody))) throw IntegrityError("state file digest mismatch");
  ByteReader r(data.first(kBody));
  if (r.u8() != kStateVersion) throw IntegrityError("unsupported state version");
  StateRecord s;
  s.next_leaf = r.u64();
  Bytes seed = r.raw(32);
  std::copy(seed.begin(), seed.end(), s.tree_seed.bytes.begin());
  return s;
}

}  // namespace llab::tree
