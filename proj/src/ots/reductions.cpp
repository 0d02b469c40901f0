#include "llab/ots/reductions.hpp"

#include <cmath>

#include "llab/primitives/games.hpp"
#include "llab/reduction/draw_plan.hpp"
#include "llab/reduction/session_adversary.hpp"

namespace llab::ots {

using game::Abort;
using game::AdversarySession;
using game::Reply;
using reduction::BlackBox;
using reduction::DrawPlan;
using reduction::recorded;
using reduction::HonestRunCorrespondence;
using reduction::SessionAdversary;

namespace {

/// Shared session shape: the wrapped forger is spawned on the session's tape;
/// the transformer's own choices come from tape.fork("transformer").
class TransformerSession : public AdversarySession, public HonestRunCorrespondence {
 public:
  TransformerSession(const BlackBox& box, RandomTape& tape) : tape_(tape), forger_(box.spawn(tape)) {}

  Reply respond(ByteView m) override {
    if (done_) return Abort{"session finished"};
    done_ = true;
    own_ = tape_.fork("transformer");
    return run(m, *own_);
  }

  std::vector<Draw> internal_challenger_draws(std::span<const Draw> ext) const override { return plan_.resolve(ext); }

 protected:
  virtual Reply run(ByteView challenge, RandomTape& own) = 0;

  /// Drives the forger until it forges or aborts. `answer` handles a signing
  /// query and returns the signature, or nullopt to abort.
  template <typename SignFn>
  std::variant<Forgery, Abort> drive(const Bytes& pk, std::size_t max_queries, SignFn&& answer) {
    Reply r = forger_->respond(concat(Bytes{'K'}, pk));
    std::size_t queries = 0;
    for (;;) {
      if (auto* a = std::get_if<Abort>(&r)) return Abort{"forger aborted: " + a->reason};
      const Bytes& out = std::get<Bytes>(r);
      if (out.empty()) return Abort{"forger sent an empty message"};
      if (out[0] == 'S') {
        if (++queries > max_queries) return Abort{"forger exceeded its signing budget"};
        std::optional<Bytes> sig = answer(ByteView(out).subspan(1));
        if (!sig) return Abort{"signing query cannot be simulated"};
        r = forger_->respond(concat(Bytes{'G'}, *sig));
        continue;
      }
      try {
        if (auto f = parse_forgery(out)) return *f;
      } catch (const DecodeError&) {
      }
      return Abort{"forger broke the forgery schema"};
    }
  }

  RandomTape& tape_;
  std::unique_ptr<AdversarySession> forger_;
  std::unique_ptr<RandomTape> own_;
  DrawPlan plan_;
  bool done_ = false;
};

// ---- Lamport -----------------------------------------------------------------

class LamportInverterSession final : public TransformerSession {
 public:
  struct Config {
    std::shared_ptr<const Lamport> scheme;
  };
  LamportInverterSession(const BlackBox& box, Config cfg, RandomTape& tape)
      : TransformerSession(box, tape), cfg_(std::move(cfg)) {}

 protected:
  Reply run(ByteView y, RandomTape& own) override {
    const Lamport& L = *cfg_.scheme;
    const auto& p = L.params();
    const std::size_t slots = 2 * std::size_t{p.message_bits};
    const std::size_t pos = own.draw(slots);
    const unsigned istar = static_cast<unsigned>(pos / 2);
    const unsigned bstar = static_cast<unsigned>(pos % 2);

    std::vector<Bytes> sk(slots), pk(slots);
    plan_.parts.assign(slots, {});
    for (std::size_t s = 0; s < slots; ++s) {
      if (s == pos) {
        pk[s] = Bytes(y.begin(), y.end());
        plan_.external_slots = {s};
        plan_.external_sizes = {prim::sample_draw_count(p.owf.input_bits)};
        continue;
      }
      sk[s] = recorded(own, plan_.parts[s], [&](RandomTape& t) { return prim::sample_input(p.owf, t); });
      pk[s] = L.image(sk[s]);
    }

    std::optional<Bytes> queried;
    auto result = drive(L.encode_pk(pk), 1, [&](ByteView m) -> std::optional<Bytes> {
      if (!L.valid_message(m)) return std::nullopt;
      if (message_bit(m, p.message_bits, istar) == bstar) return std::nullopt;
      std::vector<Bytes> out;
      for (unsigned i = 0; i < p.message_bits; ++i) out.push_back(sk[Lamport::slot(i, message_bit(m, p.message_bits, i))]);
      queried = Bytes(m.begin(), m.end());
      return L.encode_sig(out);
    });
    if (auto* a = std::get_if<Abort>(&result)) return *a;
    const Forgery& f = std::get<Forgery>(result);
    if (!L.valid_message(f.message) || (queried && *queried == f.message)) return Abort{"forgery is not fresh"};
    if (message_bit(f.message, p.message_bits, istar) != bstar) return Abort{"forgery misses the planted slot"};
    std::vector<Bytes> revealed;
    try {
      revealed = L.decode_sig(f.signature);
    } catch (const DecodeError&) {
      return Abort{"forged signature does not decode"};
    }
    const Bytes& x = revealed[istar];
    if (p.owf.input_bits % 8 != 0 && (x[0] >> (p.owf.input_bits % 8)) != 0) return Abort{"element out of range"};
    if (L.image(x) != Bytes(y.begin(), y.end())) return Abort{"planted element does not verify"};
    return x;
  }

 private:
  Config cfg_;
};

class LamportInverter final : public reduction::Transformer {
 public:
  explicit LamportInverter(LamportParams p) : scheme_(make_lamport(std::move(p))) {}
  std::string name() const override { return "lamport-inverter"; }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override {
    return forgery_interface(*scheme_, ForgeryGameParams::one_time_params());
  }
  std::string output_interface() const override {
    return prim::standard_interface(prim::StandardGameKind::inv, scheme_->params().owf);
  }

 protected:
  game::AdversaryHandle wrap(BlackBox box) const override {
    const auto& p = scheme_->params();
    const double extra = std::log2(2.0 * p.message_bits) + (2.0 * p.message_bits - 1) * p.owf.input_bits;
    return std::make_shared<SessionAdversary<LamportInverterSession>>(
        std::move(box), LamportInverterSession::Config{scheme_}, "lamport-inverter(...)", output_interface(), extra);
  }

 private:
  std::shared_ptr<const Lamport> scheme_;
};

// ---- W-OTS -------------------------------------------------------------------

class WotsKowSession final : public TransformerSession {
 public:
  struct Config {
    std::shared_ptr<const Wots> scheme;
  };
  WotsKowSession(const BlackBox& box, Config cfg, RandomTape& tape)
      : TransformerSession(box, tape), cfg_(std::move(cfg)) {}

 protected:
  Reply run(ByteView challenge, RandomTape& own) override {
    const Wots& W = *cfg_.scheme;
    const auto& p = W.params();
    const std::size_t xb = p.prf.input_bytes();
    if (challenge.size() != xb + p.prf.output_bytes()) return Abort{"malformed challenge"};
    const Bytes x(challenge.begin(), challenge.begin() + static_cast<std::ptrdiff_t>(xb));
    const Bytes y(challenge.begin() + static_cast<std::ptrdiff_t>(xb), challenge.end());
    const unsigned L = p.chain_count();
    const unsigned nu = static_cast<unsigned>(own.draw(L));

    // Internal keygen order: x, then chain starts 0..L-1. External order: k, then x.
    plan_.parts.assign(1 + L, {});
    plan_.external_slots = {1 + nu, 0};
    plan_.external_sizes = {prim::sample_draw_count(p.prf.key_bits), prim::sample_draw_count(p.prf.input_bits)};
    Wots::Material pk{x, {}};
    std::vector<Bytes> starts(L);
    for (unsigned j = 0; j < L; ++j) {
      if (j == nu) {
        pk.chains.push_back(W.chain(x, y, p.w - 2));
        continue;
      }
      starts[j] = recorded(own, plan_.parts[1 + j], [&](RandomTape& t) { return prim::sample_key(p.prf, t); });
      pk.chains.push_back(W.chain(x, starts[j], p.w - 1));
    }

    std::optional<Bytes> queried;
    auto result = drive(W.encode_pk(pk), 1, [&](ByteView m) -> std::optional<Bytes> {
      if (!W.valid_message(m)) return std::nullopt;
      std::vector<unsigned> d = W.digits(m);
      if (d[nu] == 0) return std::nullopt;
      std::vector<Bytes> out;
      for (unsigned j = 0; j < L; ++j) out.push_back(j == nu ? W.chain(x, y, d[j] - 1) : W.chain(x, starts[j], d[j]));
      queried = Bytes(m.begin(), m.end());
      return W.encode_sig(out);
    });
    if (auto* a = std::get_if<Abort>(&result)) return *a;
    const Forgery& f = std::get<Forgery>(result);
    if (!W.valid_message(f.message) || (queried && *queried == f.message)) return Abort{"forgery is not fresh"};
    if (W.digits(f.message)[nu] != 0) return Abort{"forgery does not open the planted chain at its start"};
    std::vector<Bytes> values;
    try {
      values = W.decode_sig(f.signature);
      if (prim::eval(p.prf, values[nu], x) != y) return Abort{"forgery does not walk the planted chain"};
    } catch (const std::exception&) {
      return Abort{"forged signature does not decode"};
    }
    return values[nu];
  }

 private:
  Config cfg_;
};

class WotsKow final : public reduction::Transformer {
 public:
  explicit WotsKow(WotsParams p) : scheme_(make_wots(std::move(p))) {}
  std::string name() const override { return "wots-kow"; }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override {
    return forgery_interface(*scheme_, ForgeryGameParams::one_time_params());
  }
  std::string output_interface() const override {
    return prim::standard_interface(prim::StandardGameKind::kow, scheme_->params().prf);
  }

 protected:
  game::AdversaryHandle wrap(BlackBox box) const override {
    const auto& p = scheme_->params();
    const double extra = std::log2(static_cast<double>(p.chain_count())) +
                         static_cast<double>(p.chain_count() - 1) * p.prf.key_bits;
    return std::make_shared<SessionAdversary<WotsKowSession>>(std::move(box), WotsKowSession::Config{scheme_},
                                                              "wots-kow(...)", output_interface(), extra);
  }

 private:
  std::shared_ptr<const Wots> scheme_;
};

}  // namespace

reduction::TransformerPtr lamport_inverter_transformer(const LamportParams& p) {
  return std::make_shared<LamportInverter>(p);
}

reduction::Reduction lamport_reduction(const LamportParams& p) {
  return reduction::make_reduction("lamport-ots", prim::standard_game(prim::StandardGameKind::inv, p.owf),
                                   lamport_inverter_transformer(p),
                                   make_forgery_game(make_lamport(p), ForgeryGameParams::one_time_params()),
                                   reduction::BetaSpec::linear_over_poly(1, {0, 2}, p.message_bits));
}

reduction::TransformerPtr wots_kow_transformer(const WotsParams& p) { return std::make_shared<WotsKow>(p); }

reduction::Reduction wots_kow_reduction(const WotsParams& p) {
  const unsigned L = p.chain_count();
  return reduction::make_reduction(
      "wots-kow", prim::standard_game(prim::StandardGameKind::kow, p.prf), wots_kow_transformer(p),
      make_forgery_game(make_wots(p), ForgeryGameParams::one_time_params()), reduction::BetaSpec::scalar(1),
      "claimed beta x; the embedding guesses one of " + std::to_string(L) +
          " chains and needs the forgery to open it at digit 0, so the measured relation carries a 1/" +
          std::to_string(L) + " position-guess factor");
}

}  // namespace llab::ots
