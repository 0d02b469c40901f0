#include "llab/ots/wots.hpp"

#include <bit>

#include "llab/primitives/games.hpp"

namespace llab::ots {

namespace {

unsigned floor_log2(std::uint64_t v) { return 63 - static_cast<unsigned>(std::countl_zero(v)); }

}  // namespace

unsigned WotsParams::log_w() const { return floor_log2(w); }

unsigned WotsParams::l1() const { return (message_bits + log_w() - 1) / log_w(); }

unsigned WotsParams::l2() const {
  const std::uint64_t max_sum = std::uint64_t{l1()} * (w - 1);
  return floor_log2(max_sum) / log_w() + 1;
}

Wots::Wots(WotsParams p) : p_(std::move(p)) {
  p_.prf.validate();
  if (p_.w < 2 || !std::has_single_bit(p_.w)) throw std::invalid_argument("w must be a power of two, at least 2");
  if (p_.message_bits < 1) throw std::invalid_argument("W-OTS needs at least one message bit");
  if (!p_.prf.fixed_input() || !p_.prf.keyed() || p_.prf.key_bits != p_.prf.output_bits) {
    throw std::invalid_argument("W-OTS chains need a fixed-input PRF with equal key and output widths");
  }
}

std::string Wots::id() const {
  return "wots/v1[w=" + std::to_string(p_.w) + ";l=" + std::to_string(p_.message_bits) + ";" +
         prim::spec_tag(p_.prf) + "]";
}

std::size_t Wots::public_key_bytes() const {
  return encode_pk({Bytes(p_.prf.input_bytes()), std::vector<Bytes>(p_.chain_count(), Bytes(p_.prf.key_bytes()))})
      .size();
}

std::vector<unsigned> Wots::digits(ByteView m) const {
  const unsigned lw = p_.log_w();
  const unsigned l1 = p_.l1();
  const unsigned padded = l1 * lw;
  std::vector<unsigned> out;
  out.reserve(p_.chain_count());
  std::uint64_t checksum = 0;
  for (unsigned t = 0; t < l1; ++t) {
    unsigned d = 0;
    for (unsigned j = 0; j < lw; ++j) {
      const unsigned pos = padded - 1 - (t * lw + j);  // from the least significant end
      const unsigned bit = pos < p_.message_bits ? message_bit(m, p_.message_bits, p_.message_bits - 1 - pos) : 0;
      d = (d << 1) | bit;
    }
    out.push_back(d);
    checksum += p_.w - 1 - d;
  }
  const unsigned l2 = p_.l2();
  std::vector<unsigned> cs(l2);
  for (unsigned t = l2; t-- > 0;) {
    cs[t] = static_cast<unsigned>(checksum % p_.w);
    checksum /= p_.w;
  }
  out.insert(out.end(), cs.begin(), cs.end());
  return out;
}

Bytes Wots::chain(ByteView x, ByteView start, unsigned steps) const {
  Bytes v(start.begin(), start.end());
  for (unsigned i = 0; i < steps; ++i) v = prim::eval(p_.prf, v, x);
  return v;
}

KeyPair Wots::keygen(RandomTape& tape) const {
  Material sk{prim::sample_input(p_.prf, tape), {}};
  Material pk{sk.x, {}};
  for (unsigned j = 0; j < p_.chain_count(); ++j) {
    sk.chains.push_back(prim::sample_key(p_.prf, tape));
    pk.chains.push_back(chain(sk.x, sk.chains.back(), p_.w - 1));
  }
  return {encode_pk(pk), encode_sk(sk)};
}

Bytes Wots::sign(ByteView sk, ByteView m, SignerState&) const {
  if (!valid_message(m)) throw std::invalid_argument("message outside the W-OTS message space");
  Material key = decode_sk(sk);
  std::vector<unsigned> d = digits(m);
  std::vector<Bytes> out;
  for (std::size_t j = 0; j < d.size(); ++j) out.push_back(chain(key.x, key.chains[j], d[j]));
  return encode_sig(out);
}

bool Wots::verify(ByteView pk, ByteView m, ByteView sig) const {
  if (!valid_message(m)) return false;
  try {
    Material key = decode_pk(pk);
    std::vector<Bytes> values = decode_sig(sig);
    std::vector<unsigned> d = digits(m);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (chain(key.x, values[j], p_.w - 1 - d[j]) != key.chains[j]) return false;
    }
    return true;
  } catch (const std::exception&) {
    // Malformed encodings and out-of-width chain values.
    return false;
  }
}

Bytes Wots::encode(const Material& m) const {
  ByteWriter w;
  put_header(w, id());
  w.put_blob(m.x);
  put_elements(w, m.chains, p_.prf.key_bytes());
  return w.take();
}

Wots::Material Wots::decode(ByteView data) const {
  ByteReader r(data);
  read_header(r, id());
  Material m;
  m.x = r.blob();
  if (m.x.size() != p_.prf.input_bytes()) throw DecodeError("wrong x width");
  m.chains = read_elements(r, p_.chain_count(), p_.prf.key_bytes());
  r.expect_done();
  return m;
}

Bytes Wots::encode_pk(const Material& m) const { return encode(m); }
Bytes Wots::encode_sk(const Material& m) const { return encode(m); }
Wots::Material Wots::decode_pk(ByteView pk) const { return decode(pk); }
Wots::Material Wots::decode_sk(ByteView sk) const { return decode(sk); }

Bytes Wots::encode_sig(const std::vector<Bytes>& values) const {
  ByteWriter w;
  put_header(w, id());
  put_elements(w, values, p_.prf.key_bytes());
  return w.take();
}

std::vector<Bytes> Wots::decode_sig(ByteView sig) const {
  ByteReader r(sig);
  read_header(r, id());
  auto out = read_elements(r, p_.chain_count(), p_.prf.key_bytes());
  r.expect_done();
  return out;
}

std::shared_ptr<const Wots> make_wots(WotsParams p) { return std::make_shared<Wots>(std::move(p)); }

}  // namespace llab::ots
