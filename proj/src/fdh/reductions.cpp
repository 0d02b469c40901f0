#include "llab/fdh/reductions.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "llab/ots/forgery.hpp"
#include "llab/primitives/games.hpp"
#include "llab/reduction/draw_plan.hpp"
#include "llab/reduction/session_adversary.hpp"

namespace llab::fdh {

using game::Abort;
using game::Reply;
using reduction::BlackBox;
using reduction::DrawPlan;

namespace {

constexpr std::size_t kSeedDraws = 32;

RoGameParams with_flavor(RoGameParams p, RoGameParams::Flavor f) {
  p.flavor = f;
  return p;
}

// ---- classical programming transformer ----------------------------------------

class ClassicalSession final : public game::AdversarySession, public reduction::HonestRunCorrespondence {
 public:
  struct Config {
    RoGameParams p;
  };
  ClassicalSession(const BlackBox& box, Config cfg, RandomTape& tape)
      : cfg_(cfg), tape_(tape), forger_(box.spawn(tape)) {}

  Reply respond(ByteView challenge) override {
    if (done_) return Abort{"session finished"};
    done_ = true;
    own_ = tape_.fork("transformer");
    return run(challenge, *own_);
  }

  std::vector<Draw> internal_challenger_draws(std::span<const Draw> ext) const override { return plan_.resolve(ext); }

 private:
  struct Point {
    BigInt value;
    std::optional<BigInt> preimage;
  };

  Reply run(ByteView challenge, RandomTape& own) {
    prim::TdpPublicKey pk;
    BigInt ystar;
    try {
      ByteReader r(challenge);
      pk.n = prim::bytes_to_int(r.blob());
      pk.e = prim::bytes_to_int(r.blob());
      ystar = prim::bytes_to_int(r.blob());
      r.expect_done();
      pk.bits = cfg_.p.modulus_bits;
    } catch (const DecodeError&) {
      return Abort{"malformed inversion challenge"};
    }
    const std::size_t len = prim::byte_length(pk.n);
    const std::uint64_t j = own.draw(std::max<std::size_t>(cfg_.p.max_hash_queries, 1));

    // The internal challenger draws its keygen seed first, then one value per fresh oracle point.
    plan_.parts.assign(1, {});
    plan_.external_slots = {0};
    plan_.external_sizes = {kSeedDraws};

    std::map<Bytes, Point> table;
    std::optional<Bytes> embedded;
    std::size_t fresh_hashes = 0;
    const std::uint64_t nv = pk.n.convert_to<std::uint64_t>();
    auto point = [&](const Bytes& m, bool hash_query) -> Point& {
      auto it = table.find(m);
      if (it != table.end()) return it->second;
      Point pt;
      if (hash_query && fresh_hashes++ == j) {
        pt.value = ystar;
        embedded = m;
      } else {
        BigInt r = prim::sample_unit(pk.n, own);
        pt.value = prim::tdp_forward(pk, r);
        pt.preimage = r;
      }
      plan_.parts.push_back({Draw{nv, pt.value.convert_to<std::uint64_t>()}});
      return table.emplace(m, pt).first->second;
    };

    ByteWriter key;
    key.put_u8('K');
    key.put_blob(prim::int_to_bytes(pk.n, len)).put_blob(prim::int_to_bytes(pk.e, prim::byte_length(pk.e)));
    Reply reply = forger_->respond(key.take());
    std::size_t hashes = 0, signs = 0;
    std::set<Bytes> signed_msgs;
    for (;;) {
      if (auto* a = std::get_if<Abort>(&reply)) return Abort{"forger aborted: " + a->reason};
      const Bytes& out = std::get<Bytes>(reply);
      if (out.empty()) return Abort{"forger sent an empty message"};
      const Bytes body(out.begin() + 1, out.end());
      if (out[0] == 'H') {
        if (++hashes > cfg_.p.max_hash_queries) return Abort{"forger exceeded its hash budget"};
        reply = forger_->respond(concat(Bytes{'h'}, prim::int_to_bytes(point(body, true).value, len)));
        continue;
      }
      if (out[0] == 'S') {
        if (++signs > cfg_.p.max_sign_queries) return Abort{"forger exceeded its signing budget"};
        const Point& pt = point(body, false);
        if (!pt.preimage) return Abort{"signing query hits the embedded point"};
        signed_msgs.insert(body);
        reply = forger_->respond(concat(Bytes{'G'}, prim::int_to_bytes(*pt.preimage, len)));
        continue;
      }
      std::optional<ots::Forgery> f;
      try {
        f = ots::parse_forgery(out);
      } catch (const DecodeError&) {
      }
      if (!f) return Abort{"forger broke the forgery schema"};
      if (!embedded || f->message != *embedded) return Abort{"forgery is not on the embedded point"};
      if (signed_msgs.count(f->message) != 0) return Abort{"forgery is not fresh"};
      const BigInt s = prim::bytes_to_int(f->signature);
      if (!prim::in_units(pk.n, s) || prim::tdp_forward(pk, s) != ystar) return Abort{"forgery does not verify"};
      return ByteWriter().put_blob(prim::int_to_bytes(s, len)).take();
    }
  }

  Config cfg_;
  RandomTape& tape_;
  std::unique_ptr<game::AdversarySession> forger_;
  std::unique_ptr<RandomTape> own_;
  DrawPlan plan_;
  bool done_ = false;
};

class ClassicalTransformer final : public reduction::Transformer {
 public:
  explicit ClassicalTransformer(RoGameParams p) : p_(with_flavor(p, RoGameParams::Flavor::classical)) {}
  std::string name() const override { return "fdh-classical"; }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override { return ro_forgery_interface(p_); }
  std::string output_interface() const override { return prim::tdp_interface(p_.modulus_bits); }

 protected:
  game::AdversaryHandle wrap(BlackBox box) const override {
    const double extra = std::log2(static_cast<double>(std::max<std::size_t>(p_.max_hash_queries, 1))) +
                         static_cast<double>(p_.max_hash_queries + p_.max_sign_queries) * p_.modulus_bits;
    return std::make_shared<reduction::SessionAdversary<ClassicalSession>>(
        std::move(box), ClassicalSession::Config{p_}, "fdh-classical(...)", output_interface(), extra);
  }

 private:
  RoGameParams p_;
};

// ---- interpreter ---------------------------------------------------------------

const Bytes& anchor_message() {
  static const Bytes a(8, 0);
  return a;
}

class InterpreterSession final : public game::AdversarySession {
 public:
  struct Config {
    RoGameParams outer;
    InterpreterConfig cfg;
  };
  InterpreterSession(const BlackBox& box, Config cfg, RandomTape& tape)
      : cfg_(std::move(cfg)), tape_(tape), forger_(box.spawn(tape)) {}

  Reply respond(ByteView m) override {
    switch (step_++) {
      case 0:
        try {
          pk_ = parse_key_message(m, cfg_.outer.modulus_bits);
        } catch (const DecodeError&) {
          return Abort{"malformed key message"};
        }
        key_msg_ = Bytes(m.begin(), m.end());
        return hash_query(anchor_message());
      case 1: return emulate(m);
      default: return Abort{"session finished"};
    }
  }

 private:
  Reply emulate(ByteView answer) {
    BigInt b;
    try {
      b = parse_value(answer, 'h');
    } catch (const DecodeError&) {
      return Abort{"malformed hash answer"};
    }
    if (!prim::in_units(pk_.n, b)) return Abort{"hash answer outside Z_N*"};
    own_ = tape_.fork("transformer");
    SemiConstantOracle hhat = sample_sc_oracle(cfg_.cfg.lambda, b, pk_, prim::draw_seed(*own_));
    const std::size_t len = prim::byte_length(pk_.n);

    Reply reply = forger_->respond(key_msg_);
    std::size_t hashes = 0, signs = 0;
    std::set<Bytes> signed_msgs;
    for (;;) {
      if (auto* a = std::get_if<Abort>(&reply)) return Abort{"forger aborted: " + a->reason};
      const Bytes& out = std::get<Bytes>(reply);
      if (out.empty()) return Abort{"forger sent an empty message"};
      const Bytes body(out.begin() + 1, out.end());
      if (out[0] == 'H') {
        if (++hashes > cfg_.cfg.max_hash_queries) return Abort{"forger exceeded the hash bound q_H"};
        reply = forger_->respond(concat(Bytes{'h'}, prim::int_to_bytes(hhat.query(body), len)));
        continue;
      }
      if (out[0] == 'S') {
        if (++signs > cfg_.cfg.max_sign_queries) return Abort{"forger exceeded the signing bound q_S"};
        if (hhat.o2(body)) return Abort{"signing query on an o2 = 1 point"};
        signed_msgs.insert(body);
        reply = forger_->respond(concat(Bytes{'G'}, prim::int_to_bytes(hhat.o1(body), len)));
        continue;
      }
      std::optional<ots::Forgery> f;
      try {
        f = ots::parse_forgery(out);
      } catch (const DecodeError&) {
      }
      if (!f) return Abort{"forger broke the forgery schema"};
      if (signed_msgs.count(f->message) != 0) return Abort{"forgery is not fresh"};
      const BigInt s = prim::bytes_to_int(f->signature);
      if (!prim::in_units(pk_.n, s) || prim::tdp_forward(pk_, s) != hhat.query(f->message)) {
        return Abort{"forgery does not verify under the emulated oracle"};
      }
      if (!hhat.o2(f->message)) return Abort{"forgery is on an o2 = 0 point"};
      return forgery_reply(anchor_message(), prim::int_to_bytes(s, len));
    }
  }

  Config cfg_;
  RandomTape& tape_;
  std::unique_ptr<game::AdversarySession> forger_;
  std::unique_ptr<RandomTape> own_;
  prim::TdpPublicKey pk_;
  Bytes key_msg_;
  int step_ = 0;
};

class Interpreter final : public reduction::Transformer {
 public:
  Interpreter(RoGameParams outer, InterpreterConfig cfg)
      : outer_(with_flavor(outer, RoGameParams::Flavor::classical)), cfg_(std::move(cfg)) {
    if (!(cfg_.lambda > 0 && cfg_.lambda < 1)) throw std::invalid_argument("lambda must lie in (0,1)");
    if (outer_.max_hash_queries < 1) throw std::invalid_argument("the interpreter needs one outer hash query");
  }
  std::string name() const override { return "fdh-interpreter"; }
  bool straight_line_claimed() const override { return false; }
  std::string input_interface() const override {
    RoGameParams in = outer_;
    in.flavor = RoGameParams::Flavor::quantum_stand_in;
    in.max_hash_queries = cfg_.max_hash_queries;
    in.max_sign_queries = cfg_.max_sign_queries;
    return ro_forgery_interface(in);
  }
  std::string output_interface() const override { return ro_forgery_interface(outer_); }

 protected:
  game::AdversaryHandle wrap(BlackBox box) const override {
    return std::make_shared<reduction::SessionAdversary<InterpreterSession>>(
        std::move(box), InterpreterSession::Config{outer_, cfg_}, "fdh-interpreter(...)", output_interface(), 256.0);
  }

 private:
  RoGameParams outer_;
  InterpreterConfig cfg_;
};

Rational beta_prime(const InterpreterConfig& c) {
  Rational v = c.lambda;
  for (std::size_t i = 0; i < c.max_sign_queries; ++i) v *= 1 - c.lambda;
  return v;
}

}  // namespace

reduction::TransformerPtr fdh_classical_transformer(const RoGameParams& p) {
  return std::make_shared<ClassicalTransformer>(p);
}

reduction::Reduction fdh_classical_reduction(const RoGameParams& p) {
  const RoGameParams c = with_flavor(p, RoGameParams::Flavor::classical);
  return reduction::make_reduction(
      "fdh-classical", prim::tdp_inversion_game(c.modulus_bits), fdh_classical_transformer(c), ro_forgery_game(c),
      reduction::BetaSpec::linear_over_poly(1, {0, 1}, std::max<std::size_t>(c.max_hash_queries, 1)));
}

InterpreterConfig interpreter_config(std::size_t q_hash, std::size_t q_sign) {
  return {choose_lambda(q_hash, q_sign).lambda, q_sign, q_hash};
}

reduction::TransformerPtr fdh_interpreter(const RoGameParams& outer, const InterpreterConfig& cfg) {
  return std::make_shared<Interpreter>(outer, cfg);
}

reduction::Reduction fdh_interpreter_reduction(const RoGameParams& p, const InterpreterConfig& cfg) {
  RoGameParams inner = with_flavor(p, RoGameParams::Flavor::quantum_stand_in);
  inner.max_hash_queries = cfg.max_hash_queries;
  inner.max_sign_queries = cfg.max_sign_queries;
  const RoGameParams outer = with_flavor(p, RoGameParams::Flavor::classical);
  return reduction::make_reduction(
      "fdh-interpreter", ro_forgery_game(outer), fdh_interpreter(outer, cfg), ro_forgery_game(inner),
      reduction::BetaSpec::scalar(beta_prime(cfg)),
      "lambda " + rational_string(cfg.lambda) + "; beta' covers the o2(m*) = 1 guess and signing aborts; the SC "
          "distance bound " + rational_string(sc_distance_budget(cfg.max_hash_queries, cfg.lambda)) +
          " is reported, not subtracted");
}

FdhReport run_fdh_end_to_end(const RoGameParams& p, const game::AdversaryHandle& forger, std::uint64_t trials,
                             double confidence, const Seed& seed) {
  FdhReport rep;
  rep.params = p;
  const LambdaChoice lc = choose_lambda(p.max_hash_queries, p.max_sign_queries);
  rep.lambda = lc.lambda;
  rep.distance_budget = lc.distance_budget;
  rep.no_abort_lower_bound = lc.no_abort_lower_bound;
  rep.lambda_rationale = lc.rationale;

  const InterpreterConfig cfg{lc.lambda, p.max_sign_queries, p.max_hash_queries};
  const reduction::Reduction outer = fdh_classical_reduction(p);
  const reduction::Reduction inner = fdh_interpreter_reduction(p, cfg);
  const reduction::Reduction both = reduction::compose(outer, inner);
  rep.beta = outer.claimed_beta;
  rep.beta_prime = inner.claimed_beta;

  rep.internal = game::estimate_value(*inner.internal, forger, trials, confidence, derive_seed(seed, "stand-in"));
  rep.interpreted = game::estimate_value(*inner.external, reduction::apply_transformer(inner, forger), trials,
                                         confidence, derive_seed(seed, "interpreted"));
  rep.composed = game::estimate_value(*both.external, reduction::apply_transformer(both, forger), trials, confidence,
                                      derive_seed(seed, "composed"));
  rep.prediction = both.claimed_beta.evaluate(rep.internal.point);
  rep.slack = rep.internal.half_width + rep.interpreted.half_width + rep.composed.half_width;
  rep.satisfied = rep.composed.point >= rep.prediction - rep.slack;
  return rep;
}

std::string to_text(const FdhReport& r) {
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  std::ostringstream o;
  o << "modulus_bits: " << r.params.modulus_bits << "\n";
  o << "q_H: " << r.params.max_hash_queries << "\n";
  o << "q_S: " << r.params.max_sign_queries << "\n";
  o << "lambda: " << rational_string(r.lambda) << "\n";
  o << "lambda_rationale: " << r.lambda_rationale << "\n";
  o << "sc_distance_budget: " << rational_string(r.distance_budget) << "\n";
  o << "no_abort_lower_bound: " << rational_string(r.no_abort_lower_bound) << "\n";
  o << "abort_estimate: " << fmt(1.0 - to_double(r.no_abort_lower_bound)) << "\n";
  o << "beta: " << r.beta.describe() << "\n";
  o << "beta_prime: " << r.beta_prime.describe() << "\n";
  o << "internal: " << reduction::to_text(r.internal) << "\n";
  o << "interpreted: " << reduction::to_text(r.interpreted) << "\n";
  o << "composed: " << reduction::to_text(r.composed) << "\n";
  o << "prediction: " << fmt(r.prediction) << "\n";
  o << "slack: " << fmt(r.slack) << "\n";
  o << "satisfied: " << (r.satisfied ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace llab::fdh
