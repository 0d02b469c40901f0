#include "llab/ots/lamport.hpp"

#include "llab/primitives/games.hpp"

namespace llab::ots {

Lamport::Lamport(LamportParams p) : p_(std::move(p)) {
  p_.owf.validate();
  if (p_.message_bits < 1) throw std::invalid_argument("Lamport needs at least one message bit");
  if (p_.owf.keyed() || !p_.owf.fixed_input()) {
    throw std::invalid_argument("Lamport needs an unkeyed fixed-input one-way function");
  }
}

std::string Lamport::id() const {
  return "lamport/v1[l=" + std::to_string(p_.message_bits) + ";" + prim::spec_tag(p_.owf) + "]";
}

std::size_t Lamport::public_key_bytes() const { return encode_pk(std::vector<Bytes>(2 * p_.message_bits, Bytes(p_.owf.output_bytes()))).size(); }

KeyPair Lamport::keygen(RandomTape& tape) const {
  std::vector<Bytes> sk, pk;
  for (std::size_t s = 0; s < 2 * std::size_t{p_.message_bits}; ++s) {
    sk.push_back(prim::sample_input(p_.owf, tape));
    pk.push_back(image(sk.back()));
  }
  return {encode_pk(pk), encode_sk(sk)};
}

Bytes Lamport::sign(ByteView sk, ByteView m, SignerState&) const {
  if (!valid_message(m)) throw std::invalid_argument("message outside the Lamport message space");
  std::vector<Bytes> elems = decode_sk(sk);
  std::vector<Bytes> out;
  for (unsigned i = 0; i < p_.message_bits; ++i) out.push_back(elems[slot(i, message_bit(m, p_.message_bits, i))]);
  return encode_sig(out);
}

bool Lamport::verify(ByteView pk, ByteView m, ByteView sig) const {
  if (!valid_message(m)) return false;
  try {
    std::vector<Bytes> images = decode_pk(pk);
    std::vector<Bytes> revealed = decode_sig(sig);
    for (unsigned i = 0; i < p_.message_bits; ++i) {
      const Bytes& x = revealed[i];
      if (p_.owf.input_bits % 8 != 0 && (x[0] >> (p_.owf.input_bits % 8)) != 0) return false;
      if (image(x) != images[slot(i, message_bit(m, p_.message_bits, i))]) return false;
    }
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

Bytes Lamport::encode_pk(const std::vector<Bytes>& images) const {
  ByteWriter w;
  put_header(w, id());
  put_elements(w, images, p_.owf.output_bytes());
  return w.take();
}

Bytes Lamport::encode_sk(const std::vector<Bytes>& preimages) const {
  ByteWriter w;
  put_header(w, id());
  put_elements(w, preimages, p_.owf.input_bytes());
  return w.take();
}

Bytes Lamport::encode_sig(const std::vector<Bytes>& revealed) const {
  ByteWriter w;
  put_header(w, id());
  put_elements(w, revealed, p_.owf.input_bytes());
  return w.take();
}

namespace {

std::vector<Bytes> decode(const std::string& id, ByteView data, std::size_t count, std::size_t width) {
  ByteReader r(data);
  read_header(r, id);
  auto out = read_elements(r, count, width);
  r.expect_done();
  return out;
}

}  // namespace

std::vector<Bytes> Lamport::decode_pk(ByteView pk) const {
  return decode(id(), pk, 2 * std::size_t{p_.message_bits}, p_.owf.output_bytes());
}

std::vector<Bytes> Lamport::decode_sk(ByteView sk) const {
  return decode(id(), sk, 2 * std::size_t{p_.message_bits}, p_.owf.input_bytes());
}

std::vector<Bytes> Lamport::decode_sig(ByteView sig) const {
  return decode(id(), sig, p_.message_bits, p_.owf.input_bytes());
}

std::shared_ptr<const Lamport> make_lamport(LamportParams p) { return std::make_shared<Lamport>(std::move(p)); }

}  // namespace llab::ots
