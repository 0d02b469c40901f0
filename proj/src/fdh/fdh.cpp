#include "llab/fdh/fdh.hpp"

#include <set>

#include "llab/ots/forgery.hpp"
#include "llab/primitives/games.hpp"

namespace llab::fdh {

using game::Finish;
using game::Send;
using game::Step;

FdhScheme::FdhScheme(unsigned modulus_bits, const Seed& oracle_seed) : bits_(modulus_bits), oracle_seed_(oracle_seed) {
  if (modulus_bits < 10 || modulus_bits > 62) throw std::invalid_argument("fdh modulus must be 10..62 bits");
}

std::string FdhScheme::id() const {
  return "fdh/v1[n=" + std::to_string(bits_) + ";h=" + oracle_seed_.hex().substr(0, 16) + "]";
}

std::size_t FdhScheme::public_key_bytes() const {
  const std::size_t nb = (bits_ + 7) / 8;
  return 1 + 4 + id().size() + 4 + nb + 4 + 3;
}

ots::KeyPair FdhScheme::keygen(RandomTape& tape) const {
  prim::TdpKeyPair kp = prim::tdp_keygen(prim::draw_seed(tape), bits_);
  return {encode_pk(kp.pk), encode_sk(kp)};
}

BigInt FdhScheme::hash(const prim::TdpPublicKey& pk, ByteView m) const {
  LazyOracle h(derive_seed(oracle_seed_, "fdh:" + to_hex(prim::int_to_bytes(pk.n, prim::byte_length(pk.n)))),
               OracleRange::units(pk.n));
  return h.query(m);
}

Bytes FdhScheme::sign(ByteView sk, ByteView m, ots::SignerState&) const {
  prim::TdpKeyPair kp = decode_sk(sk);
  return encode_sig(kp.pk, prim::tdp_invert(kp.sk, hash(kp.pk, m)));
}

bool FdhScheme::verify(ByteView pk, ByteView m, ByteView sig) const {
  try {
    prim::TdpPublicKey k = decode_pk(pk);
    BigInt s = decode_sig(sig);
    if (!prim::in_units(k.n, s)) return false;
    return prim::tdp_forward(k, s) == hash(k, m);
  } catch (const std::exception&) {
    return false;
  }
}

Bytes FdhScheme::encode_pk(const prim::TdpPublicKey& pk) const {
  ByteWriter w;
  ots::put_header(w, id());
  w.put_blob(prim::int_to_bytes(pk.n, prim::byte_length(pk.n)));
  w.put_blob(prim::int_to_bytes(pk.e, prim::byte_length(pk.e)));
  return w.take();
}

Bytes FdhScheme::encode_sk(const prim::TdpKeyPair& kp) const {
  ByteWriter w;
  ots::put_header(w, id());
  for (const BigInt* v : {&kp.pk.n, &kp.pk.e, &kp.sk.d, &kp.sk.p, &kp.sk.q}) {
    w.put_blob(prim::int_to_bytes(*v, prim::byte_length(*v)));
  }
  return w.take();
}

Bytes FdhScheme::encode_sig(const prim::TdpPublicKey& pk, const BigInt& sigma) const {
  ByteWriter w;
  ots::put_header(w, id());
  w.put_blob(prim::int_to_bytes(sigma, prim::byte_length(pk.n)));
  return w.take();
}

namespace {

prim::TdpPublicKey read_pk(ByteReader& r, unsigned bits) {
  prim::TdpPublicKey pk;
  pk.n = prim::bytes_to_int(r.blob());
  pk.e = prim::bytes_to_int(r.blob());
  pk.bits = bits;
  if (pk.n < 4 || pk.e < 3) throw DecodeError("implausible public key");
  return pk;
}

}  // namespace

prim::TdpPublicKey FdhScheme::decode_pk(ByteView pk) const {
  ByteReader r(pk);
  ots::read_header(r, id());
  prim::TdpPublicKey k = read_pk(r, bits_);
  r.expect_done();
  return k;
}

prim::TdpKeyPair FdhScheme::decode_sk(ByteView sk) const {
  ByteReader r(sk);
  ots::read_header(r, id());
  prim::TdpKeyPair kp;
  kp.pk = read_pk(r, bits_);
  kp.sk.n = kp.pk.n;
  kp.sk.d = prim::bytes_to_int(r.blob());
  kp.sk.p = prim::bytes_to_int(r.blob());
  kp.sk.q = prim::bytes_to_int(r.blob());
  r.expect_done();
  return kp;
}

BigInt FdhScheme::decode_sig(ByteView sig) const {
  ByteReader r(sig);
  ots::read_header(r, id());
  BigInt s = prim::bytes_to_int(r.blob());
  r.expect_done();
  return s;
}

std::shared_ptr<const FdhScheme> instantiate_fdh(unsigned modulus_bits, const Seed& oracle_seed) {
  return std::make_shared<FdhScheme>(modulus_bits, oracle_seed);
}

// ---- random-oracle forgery game ---------------------------------------------

namespace {

class RoForgeryGame final : public game::GameDef {
 public:
  explicit RoForgeryGame(RoGameParams p) : p_(p) {}
  std::string id() const override { return ro_forgery_interface(p_); }
  std::string adversary_interface() const override { return id(); }
  std::size_t round_bound() const override { return 2 * (p_.max_hash_queries + p_.max_sign_queries + 2); }
  std::size_t max_payload() const override { return 4096; }
  double randomness_bits() const override {
    return 256.0 + static_cast<double>(p_.max_hash_queries + p_.max_sign_queries + 1) * p_.modulus_bits;
  }

  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override {
    struct Session final : game::ChallengerSession {
      RoGameParams p;
      RandomTape& tape;
      prim::TdpKeyPair kp;
      std::unique_ptr<LazyOracle> h;
      std::size_t hashes = 0, signs = 0;
      std::set<Bytes> signed_msgs;
      Session(const RoGameParams& pp, RandomTape& t) : p(pp), tape(t) {}

      Bytes value(const BigInt& v) const { return prim::int_to_bytes(v, prim::byte_length(kp.pk.n)); }

      Step start() override {
        kp = prim::tdp_keygen(prim::draw_seed(tape), p.modulus_bits);
        h = std::make_unique<LazyOracle>(tape, OracleRange::units(kp.pk.n));
        ByteWriter w;
        w.put_u8('K');
        w.put_blob(value(kp.pk.n)).put_blob(prim::int_to_bytes(kp.pk.e, prim::byte_length(kp.pk.e)));
        return Send{w.take()};
      }

      Step receive(ByteView reply) override {
        if (reply.empty()) throw game::SchemaViolation("empty message");
        ByteView body = reply.subspan(1);
        switch (reply[0]) {
          case 'H': {
            if (++hashes > p.max_hash_queries) throw game::QueryBudgetExceeded("hash query budget exhausted");
            return Send{concat(Bytes{'h'}, value(h->query(body)))};
          }
          case 'S': {
            if (++signs > p.max_sign_queries) throw game::QueryBudgetExceeded("signing query budget exhausted");
            signed_msgs.emplace(body.begin(), body.end());
            return Send{concat(Bytes{'G'}, value(prim::tdp_invert(kp.sk, h->query(body))))};
          }
          case 'F': {
            std::optional<ots::Forgery> f = ots::parse_forgery(reply);
            if (signed_msgs.count(f->message) != 0) return Finish{game::Verdict::fail, {}, "forged message was signed"};
            const BigInt s = prim::bytes_to_int(f->signature);
            if (!prim::in_units(kp.pk.n, s)) return Finish{game::Verdict::fail, {}, "signature is not in Z_N*"};
            const bool ok = prim::tdp_forward(kp.pk, s) == h->query(f->message);
            return Finish{ok ? game::Verdict::succ : game::Verdict::fail, {}, ok ? "" : "signature does not verify"};
          }
          default: throw game::SchemaViolation("unknown message tag");
        }
      }
    };
    return std::make_unique<Session>(p_, tape);
  }

 private:
  RoGameParams p_;
};

}  // namespace

game::GamePtr ro_forgery_game(const RoGameParams& p) {
  if (p.modulus_bits < 10 || p.modulus_bits > 62) throw std::invalid_argument("fdh modulus must be 10..62 bits");
  return std::make_shared<RoForgeryGame>(p);
}

std::string ro_forgery_interface(const RoGameParams& p) {
  const std::string name = p.flavor == RoGameParams::Flavor::classical ? "fdh-ro-forgery" : "fdh-qro-standin-forgery";
  return name + "/v1[n=" + std::to_string(p.modulus_bits) + ";qh=" + std::to_string(p.max_hash_queries) +
         ";qs=" + std::to_string(p.max_sign_queries) + "]";
}

Bytes hash_query(ByteView m) { return concat(Bytes{'H'}, m); }
Bytes sign_query(ByteView m) { return concat(Bytes{'S'}, m); }
Bytes forgery_reply(ByteView m, ByteView sigma) { return ots::forgery_reply(m, sigma); }

prim::TdpPublicKey parse_key_message(ByteView msg, unsigned modulus_bits) {
  if (msg.empty() || msg[0] != 'K') throw DecodeError("expected a key message");
  ByteReader r(msg.subspan(1));
  prim::TdpPublicKey pk = read_pk(r, modulus_bits);
  r.expect_done();
  return pk;
}

BigInt parse_value(ByteView msg, std::uint8_t tag) {
  if (msg.empty() || msg[0] != tag) throw DecodeError(std::string("expected a '") + static_cast<char>(tag) + "' message");
  return prim::bytes_to_int(msg.subspan(1));
}

}  // namespace llab::fdh
