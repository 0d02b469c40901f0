#include "llab/primitives/games.hpp"

#include <map>
#include <stdexcept>

namespace llab::prim {

using game::Finish;
using game::Send;
using game::Step;
using game::Verdict;

namespace {

void expect_width(ByteView v, unsigned bits, const char* what) {
  const std::size_t n = (bits + 7) / 8;
  if (v.size() != n) throw game::SchemaViolation(std::string(what) + " has the wrong length");
  if (bits % 8 != 0 && n > 0 && (v[0] >> (bits % 8)) != 0) {
    throw game::SchemaViolation(std::string(what) + " has bits above its declared width");
  }
}

Finish verdict(bool ok, std::string diag = {}) { return Finish{ok ? Verdict::succ : Verdict::fail, {}, std::move(diag)}; }

class StandardGame final : public game::GameDef {
 public:
  StandardGame(StandardGameKind kind, FunctionFamilySpec spec, StandardGameOptions opts)
      : kind_(kind), spec_(std::move(spec)), opts_(opts) {}

  std::string id() const override { return standard_interface(kind_, spec_, opts_); }
  std::string adversary_interface() const override { return id(); }

  std::size_t round_bound() const override { return kind_ == StandardGameKind::prf ? 2 * opts_.max_queries + 4 : 2; }

  std::size_t max_payload() const override {
    // A collision over a variable-input hash has no natural width.
    if (kind_ == StandardGameKind::col && !spec_.fixed_input()) return std::size_t{1} << 20;
    return 64 + 2 * std::max<std::size_t>({msg_bytes(), spec_.key_bytes(), spec_.output_bytes()});
  }

  double randomness_bits() const override {
    const double in = spec_.fixed_input() ? spec_.input_bits : 8.0 * static_cast<double>(msg_bytes());
    switch (kind_) {
      case StandardGameKind::inv: return in;
      case StandardGameKind::kow: return spec_.key_bits + in;
      case StandardGameKind::spr: return spec_.key_bits + in;
      case StandardGameKind::col: return spec_.key_bits;
      case StandardGameKind::prf:
        return 1 + spec_.key_bits + static_cast<double>(opts_.max_queries) * spec_.output_bits;
    }
    return 0;
  }

  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override;

  std::size_t msg_bytes() const { return spec_.fixed_input() ? spec_.input_bytes() : opts_.input_bytes; }
  Bytes sample_msg(RandomTape& tape) const {
    return spec_.fixed_input() ? sample_input(spec_, tape) : tape.bytes(opts_.input_bytes);
  }
  void check_msg(ByteView v, const char* what) const {
    if (spec_.fixed_input()) {
      expect_width(v, spec_.input_bits, what);
    } else if (v.size() != opts_.input_bytes) {
      throw game::SchemaViolation(std::string(what) + " has the wrong length");
    }
  }

  StandardGameKind kind_;
  FunctionFamilySpec spec_;
  StandardGameOptions opts_;
};

class InvSession final : public game::ChallengerSession {
 public:
  InvSession(const StandardGame& g, RandomTape& t) : g_(g), tape_(t) {}
  Step start() override {
    Bytes x = sample_input(g_.spec_, tape_);
    y_ = eval(g_.spec_, {}, x);
    return Send{y_};
  }
  Step receive(ByteView reply) override {
    expect_width(reply, g_.spec_.input_bits, "preimage");
    return verdict(eval(g_.spec_, {}, reply) == y_);
  }

 private:
  const StandardGame& g_;
  RandomTape& tape_;
  Bytes y_;
};

class KowSession final : public game::ChallengerSession {
 public:
  KowSession(const StandardGame& g, RandomTape& t) : g_(g), tape_(t) {}
  Step start() override {
    Bytes k = sample_key(g_.spec_, tape_);
    x_ = sample_input(g_.spec_, tape_);
    y_ = eval(g_.spec_, k, x_);
    return Send{concat(x_, y_)};
  }
  Step receive(ByteView reply) override {
    expect_width(reply, g_.spec_.key_bits, "key");
    return verdict(eval(g_.spec_, reply, x_) == y_);
  }

 private:
  const StandardGame& g_;
  RandomTape& tape_;
  Bytes x_, y_;
};

class SprSession final : public game::ChallengerSession {
 public:
  SprSession(const StandardGame& g, RandomTape& t) : g_(g), tape_(t) {}
  Step start() override {
    key_ = sample_key(g_.spec_, tape_);
    x_ = g_.sample_msg(tape_);
    return Send{concat(key_, x_)};
  }
  Step receive(ByteView reply) override {
    g_.check_msg(reply, "second preimage");
    if (equal(reply, x_)) return verdict(false, "second preimage equals the challenge");
    return verdict(eval(g_.spec_, key_, reply) == eval(g_.spec_, key_, x_));
  }

 private:
  const StandardGame& g_;
  RandomTape& tape_;
  Bytes key_, x_;
};

class ColSession final : public game::ChallengerSession {
 public:
  ColSession(const StandardGame& g, RandomTape& t) : g_(g), tape_(t) {}
  Step start() override {
    key_ = sample_key(g_.spec_, tape_);
    return Send{key_};
  }
  Step receive(ByteView reply) override {
    ByteReader r(reply);
    Bytes x = r.blob();
    Bytes x2 = r.blob();
    r.expect_done();
    if (g_.spec_.fixed_input()) {
      expect_width(x, g_.spec_.input_bits, "collision input");
      expect_width(x2, g_.spec_.input_bits, "collision input");
    }
    if (x == x2) return verdict(false, "collision inputs are equal");
    return verdict(eval(g_.spec_, key_, x) == eval(g_.spec_, key_, x2));
  }

 private:
  const StandardGame& g_;
  RandomTape& tape_;
  Bytes key_;
};

class PrfSession final : public game::ChallengerSession {
 public:
  PrfSession(const StandardGame& g, RandomTape& t) : g_(g), tape_(t) {}
  Step start() override {
    bit_ = static_cast<std::uint8_t>(tape_.draw(2));
    key_ = sample_key(g_.spec_, tape_);
    return Send{Bytes{'R'}};
  }
  Step receive(ByteView reply) override {
    if (reply.empty()) throw game::SchemaViolation("empty prf message");
    ByteView body = reply.subspan(1);
    if (reply[0] == 'Q') {
      if (++queries_ > g_.opts_.max_queries) throw game::QueryBudgetExceeded("prf query budget exhausted");
      expect_width(body, g_.spec_.input_bits, "prf query");
      Bytes x(body.begin(), body.end());
      Bytes y;
      if (bit_ == 0) {
        y = eval(g_.spec_, key_, x);
      } else {
        auto it = table_.find(x);
        if (it == table_.end()) it = table_.emplace(x, sample_bits(tape_, g_.spec_.output_bits)).first;
        y = it->second;
      }
      Bytes out{'A'};
      out.insert(out.end(), y.begin(), y.end());
      return Send{out};
    }
    if (reply[0] == 'B') {
      if (body.size() != 1 || body[0] > 1) throw game::SchemaViolation("guess must be one byte, 0 or 1");
      Finish f = verdict(body[0] == bit_);
      f.reveal = {'b', bit_};
      return f;
    }
    throw game::SchemaViolation("unknown prf message tag");
  }

 private:
  const StandardGame& g_;
  RandomTape& tape_;
  std::uint8_t bit_ = 0;
  Bytes key_;
  std::size_t queries_ = 0;
  std::map<Bytes, Bytes> table_;
};

std::unique_ptr<game::ChallengerSession> StandardGame::open(RandomTape& tape) const {
  switch (kind_) {
    case StandardGameKind::inv: return std::make_unique<InvSession>(*this, tape);
    case StandardGameKind::kow: return std::make_unique<KowSession>(*this, tape);
    case StandardGameKind::spr: return std::make_unique<SprSession>(*this, tape);
    case StandardGameKind::col: return std::make_unique<ColSession>(*this, tape);
    case StandardGameKind::prf: return std::make_unique<PrfSession>(*this, tape);
  }
  throw std::logic_error("unknown game kind");
}

class TdpGame final : public game::GameDef {
 public:
  explicit TdpGame(unsigned bits) : bits_(bits) {}
  std::string id() const override { return tdp_interface(bits_); }
  std::string adversary_interface() const override { return id(); }
  std::size_t round_bound() const override { return 2; }
  std::size_t max_payload() const override { return 64; }
  double randomness_bits() const override { return 256.0 + bits_; }

  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override {
    struct Session final : game::ChallengerSession {
      unsigned bits;
      RandomTape& tape;
      TdpPublicKey pk;
      BigInt y;
      Session(unsigned b, RandomTape& t) : bits(b), tape(t) {}
      Step start() override {
        TdpKeyPair kp = tdp_keygen(draw_seed(tape), bits);
        pk = kp.pk;
        BigInt x = sample_unit(pk.n, tape);
        y = tdp_forward(pk, x);
        const std::size_t len = byte_length(pk.n);
        ByteWriter w;
        w.put_blob(int_to_bytes(pk.n, len)).put_blob(int_to_bytes(pk.e, byte_length(pk.e)));
        w.put_blob(int_to_bytes(y, len));
        return Send{w.take()};
      }
      Step receive(ByteView reply) override {
        ByteReader r(reply);
        BigInt x = bytes_to_int(r.blob());
        r.expect_done();
        if (!in_units(pk.n, x)) return verdict(false, "answer is not in Z_N*");
        return verdict(tdp_forward(pk, x) == y);
      }
    };
    return std::make_unique<Session>(bits_, tape);
  }

 private:
  unsigned bits_;
};

}  // namespace

std::string game_kind_name(StandardGameKind k) {
  switch (k) {
    case StandardGameKind::inv: return "inv";
    case StandardGameKind::kow: return "kow";
    case StandardGameKind::spr: return "spr";
    case StandardGameKind::prf: return "prf";
    case StandardGameKind::col: return "col";
  }
  return "unknown";
}

std::string spec_tag(const FunctionFamilySpec& spec) {
  return spec.evaluator_id + ":" + kind_name(spec.kind) + ":k" + std::to_string(spec.key_bits) + ":i" +
         std::to_string(spec.input_bits) + ":o" + std::to_string(spec.output_bits);
}

std::string standard_interface(StandardGameKind kind, const FunctionFamilySpec& spec,
                               const StandardGameOptions& opts) {
  std::string s = game_kind_name(kind) + "/v1[" + spec_tag(spec);
  if (!spec.fixed_input() && (kind == StandardGameKind::spr)) s += ":len" + std::to_string(opts.input_bytes);
  if (kind == StandardGameKind::prf) s += ":q" + std::to_string(opts.max_queries);
  return s + "]";
}

game::GamePtr standard_game(StandardGameKind kind, const FunctionFamilySpec& spec, const StandardGameOptions& opts) {
  spec.validate();
  auto need = [&](bool ok) {
    if (!ok) {
      throw std::invalid_argument("game " + game_kind_name(kind) + " does not apply to a " + kind_name(spec.kind) +
                                  " family");
    }
  };
  switch (kind) {
    case StandardGameKind::inv: need(spec.kind == Kind::owf && spec.fixed_input() && !spec.keyed()); break;
    case StandardGameKind::kow: need(spec.kind == Kind::prf && spec.fixed_input()); break;
    case StandardGameKind::prf: need(spec.kind == Kind::prf && spec.fixed_input()); break;
    case StandardGameKind::spr:
      need(spec.kind == Kind::spr_hash || spec.kind == Kind::generic_hash);
      if (!spec.fixed_input() && opts.input_bytes == 0) {
        throw std::invalid_argument("spr over a variable-input hash needs input_bytes");
      }
      break;
    case StandardGameKind::col: need(spec.kind == Kind::spr_hash || spec.kind == Kind::generic_hash); break;
  }
  return std::make_shared<StandardGame>(kind, spec, opts);
}

std::string tdp_interface(unsigned modulus_bits) { return "tdp-inv/v1[" + std::to_string(modulus_bits) + "]"; }

game::GamePtr tdp_inversion_game(unsigned modulus_bits) {
  if (modulus_bits < 10 || modulus_bits > 62) throw std::invalid_argument("tdp game modulus must be 10..62 bits");
  return std::make_shared<TdpGame>(modulus_bits);
}

Seed draw_seed(RandomTape& tape) {
  Seed s;
  for (auto& b : s.bytes) b = static_cast<std::uint8_t>(tape.draw(256));
  return s;
}

}  // namespace llab::prim
