#include "llab/ots/forgery.hpp"

#include <cmath>

namespace llab::ots {

using game::Finish;
using game::Send;
using game::Step;
using game::Verdict;

namespace {

class ForgeryGame final : public game::GameDef {
 public:
  ForgeryGame(SchemePtr s, ForgeryGameParams p) : s_(std::move(s)), p_(p) {}
  std::string id() const override { return forgery_interface(*s_, p_); }
  std::string adversary_interface() const override { return forgery_interface(*s_, p_); }
  std::size_t round_bound() const override { return 2 * (p_.max_sign_queries + 2); }
  std::size_t max_payload() const override { return kForgeryMaxPayload; }
  double randomness_bits() const override { return s_->keygen_randomness_bits(); }

  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override {
    struct Session final : game::ChallengerSession {
      const ForgeryGame& g;
      RandomTape& tape;
      KeyPair keys;
      SignerState state;
      std::vector<Bytes> queried;
      Session(const ForgeryGame& gg, RandomTape& t) : g(gg), tape(t) {}

      Step start() override {
        keys = g.s_->keygen(tape);
        return Send{concat(Bytes{'K'}, keys.pk)};
      }

      Step receive(ByteView r) override {
        if (r.empty()) throw game::SchemaViolation("empty reply");
        if (r[0] == 'S') {
          ByteView m = r.subspan(1);
          if (queried.size() >= g.p_.max_sign_queries) {
            throw game::QueryBudgetExceeded("signing query beyond the budget of " +
                                            std::to_string(g.p_.max_sign_queries));
          }
          if (!g.s_->valid_message(m)) throw game::SchemaViolation("query outside the message space");
          Bytes sig;
          try {
            sig = g.s_->sign(keys.sk, m, state);
          } catch (const StateExhausted& e) {
            throw game::QueryBudgetExceeded(e.what());
          }
          queried.emplace_back(m.begin(), m.end());
          return Send{concat(Bytes{'G'}, sig)};
        }
        auto f = parse_forgery(r);
        if (!f) throw game::SchemaViolation("expected 'S' or 'F'");
        if (!g.s_->valid_message(f->message)) throw game::SchemaViolation("forged message outside the message space");
        for (const Bytes& q : queried) {
          if (q == f->message) return Finish{Verdict::fail, {}, "forged message was queried"};
        }
        const bool ok = g.s_->verify(keys.pk, f->message, f->signature);
        return Finish{ok ? Verdict::succ : Verdict::fail, {}, ok ? "" : "signature does not verify"};
      }
    };
    return std::make_unique<Session>(*this, tape);
  }

 private:
  SchemePtr s_;
  ForgeryGameParams p_;
};

}  // namespace

game::GamePtr make_forgery_game(SchemePtr scheme, ForgeryGameParams p) {
  if (p.one_time && p.max_sign_queries != 1) throw std::invalid_argument("a one-time game allows exactly one query");
  return std::make_shared<ForgeryGame>(std::move(scheme), p);
}

std::string forgery_interface(const SignatureScheme& scheme, const ForgeryGameParams& p) {
  return std::string(p.one_time ? "ot-forgery" : "forgery") + "/v1[" + scheme.id() +
         ";q=" + std::to_string(p.max_sign_queries) + "]";
}

Bytes sign_query(ByteView m) { return concat(Bytes{'S'}, m); }

Bytes forgery_reply(ByteView m, ByteView sig) {
  ByteWriter w;
  w.put_u8('F').put_blob(m).put_blob(sig);
  return w.take();
}

std::optional<Forgery> parse_forgery(ByteView reply) {
  if (reply.empty() || reply[0] != 'F') return std::nullopt;
  ByteReader r(reply.subspan(1));
  Forgery f;
  f.message = r.blob();
  f.signature = r.blob();
  r.expect_done();
  return f;
}

Bytes expect_tagged(ByteView msg, std::uint8_t tag) {
  if (msg.empty() || msg[0] != tag) throw DecodeError(std::string("expected a '") + static_cast<char>(tag) + "' message");
  return Bytes(msg.begin() + 1, msg.end());
}

}  // namespace llab::ots
