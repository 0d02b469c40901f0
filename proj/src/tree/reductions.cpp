#include "llab/tree/reductions.hpp"

#include <cmath>

#include "llab/primitives/games.hpp"
#include "llab/reduction/draw_plan.hpp"
#include "llab/reduction/session_adversary.hpp"
#include "llab/simd/kernels.hpp"
#include "llab/tree/case_split.hpp"

namespace llab::tree {

using game::Abort;
using game::Reply;
using reduction::BlackBox;
using reduction::DrawPlan;
using reduction::recorded;

namespace {

enum class Mode { col, spr, ots };

Mode mode_of(const TreeParams& p, TreeTarget t) {
  if (t == TreeTarget::ots_forgery) return Mode::ots;
  return p.variant == Variant::xmss ? Mode::spr : Mode::col;
}

prim::StandardGameOptions spr_options(const TreeParams& p) {
  prim::StandardGameOptions o;
  o.input_bytes = p.mask_bytes();
  return o;
}

class TreeSession final : public game::AdversarySession, public reduction::HonestRunCorrespondence {
 public:
  struct Config {
    std::shared_ptr<const TreeScheme> scheme;
    Mode mode;
    std::size_t max_queries;
  };
  TreeSession(const BlackBox& box, Config cfg, RandomTape& tape)
      : cfg_(std::move(cfg)), tape_(tape), forger_(box.spawn(tape)) {}

  Reply respond(ByteView m) override {
    switch (phase_) {
      case Phase::start: return start(m);
      case Phase::relay: return resume(m);
      case Phase::running:
      case Phase::done: break;
    }
    return Abort{"session finished"};
  }

  std::vector<Draw> internal_challenger_draws(std::span<const Draw> ext) const override { return plan_.resolve(ext); }

 private:
  enum class Phase { start, running, relay, done };

  const TreeScheme& S() const { return *cfg_.scheme; }

  Reply stop(std::string why) {
    phase_ = Phase::done;
    return Abort{std::move(why)};
  }

  Reply start(ByteView challenge) {
    const TreeParams& p = S().params();
    own_ = tape_.fork("transformer");
    RandomTape& own = *own_;
    const std::size_t kb = p.hash.key_bytes();

    Bytes key, x, planted_pk;
    switch (cfg_.mode) {
      case Mode::col:
        if (challenge.size() != kb) return stop("malformed collision challenge");
        key.assign(challenge.begin(), challenge.end());
        break;
      case Mode::spr:
        if (challenge.size() != kb + p.mask_bytes()) return stop("malformed spr challenge");
        key.assign(challenge.begin(), challenge.begin() + static_cast<std::ptrdiff_t>(kb));
        x.assign(challenge.begin() + static_cast<std::ptrdiff_t>(kb), challenge.end());
        wstar_ = 1 + own.draw(p.leaves() - 1);
        break;
      case Mode::ots:
        try {
          planted_pk = ots::expect_tagged(challenge, 'K');
        } catch (const DecodeError&) {
          return stop("malformed forgery challenge");
        }
        wstar_ = 1 + own.draw(p.node_count());
        break;
    }

    // Parts follow the keygen draw order: hash key, nodes 1..N, one mask per level.
    const std::size_t N = p.node_count();
    plan_.parts.assign(1 + N + (p.variant == Variant::xmss ? p.depth : 0), {});
    if (cfg_.mode == Mode::ots) {
      t_.hash_key = recorded(own, plan_.parts[0], [&](RandomTape& t) { return prim::sample_key(p.hash, t); });
    } else {
      t_.hash_key = key;
      plan_.external_slots.push_back(0);
      plan_.external_sizes.push_back(prim::sample_draw_count(p.hash.key_bits));
    }
    t_.nodes.assign(N + 1, {});
    for (std::uint64_t w = 1; w <= N; ++w) {
      if (cfg_.mode == Mode::ots && w == wstar_) {
        t_.nodes[w].pk = planted_pk;
        plan_.external_slots.push_back(w);
        plan_.external_sizes.push_back(DrawPlan::kRest);
        continue;
      }
      t_.nodes[w] = recorded(own, plan_.parts[w], [&](RandomTape& t) { return p.ots->keygen(t); });
    }
    if (p.variant == Variant::xmss) {
      for (unsigned d = 0; d < p.depth; ++d) {
        auto& part = plan_.parts[1 + N + d];
        if (cfg_.mode == Mode::spr && d == TreeScheme::level_of(wstar_)) {
          Bytes mask = concat(t_.nodes[2 * wstar_].pk, t_.nodes[2 * wstar_ + 1].pk);
          if (mask.size() != x.size()) return stop("children do not match the challenge width");
          simd::xor_bytes(mask, mask, x);
          for (std::uint8_t b : mask) part.push_back(Draw{256, b});
          t_.masks.push_back(std::move(mask));
          continue;
        }
        t_.masks.push_back(recorded(own, part, [&](RandomTape& t) { return t.bytes(p.mask_bytes()); }));
      }
    }
    pk_ = S().encode_pk(t_);
    phase_ = Phase::running;
    return advance(forger_->respond(concat(Bytes{'K'}, pk_)));
  }

  Reply resume(ByteView m) {
    Bytes sig;
    try {
      sig = ots::expect_tagged(m, 'G');
    } catch (const DecodeError&) {
      return stop("external signing answer is malformed");
    }
    relayed_sig_ = std::move(sig);
    phase_ = Phase::running;
    Bytes query = std::move(pending_);
    return answer(query);
  }

  // Answers one forger signing query, or suspends on the external signing query.
  Reply answer(const Bytes& m) {
    const TreeParams& p = S().params();
    const std::uint64_t leaf = queries_.size();
    if (leaf >= p.leaves()) return stop("tree has no unused leaf");
    const std::uint64_t u = p.leaves() + leaf;
    const bool on_path = cfg_.mode == Mode::ots && (u >> (p.depth - TreeScheme::level_of(wstar_))) == wstar_;
    if (on_path) {
      Bytes msg = honest_message_at(S(), t_, wstar_, m);
      if (!relayed_sig_) {
        pending_ = m;
        relayed_msg_ = msg;
        phase_ = Phase::relay;
        return ots::sign_query(msg);
      }
      if (msg != relayed_msg_) return stop("planted node would sign a second message");
    }
    TreeSignature s;
    s.leaf_index = leaf;
    auto sign_node = [&](std::uint64_t w, ByteView msg) {
      return (cfg_.mode == Mode::ots && w == wstar_) ? *relayed_sig_ : p.ots->sign_once(t_.nodes[w].sk, msg);
    };
    s.leaf_sig = sign_node(u, m);
    for (std::uint64_t w = u >> 1; w >= 1; w >>= 1) {
      const Bytes& l = t_.nodes[2 * w].pk;
      const Bytes& r = t_.nodes[2 * w + 1].pk;
      s.path.push_back({l, r, sign_node(w, honest_message_at(S(), t_, w, m))});
    }
    queries_.push_back(m);
    return advance(forger_->respond(concat(Bytes{'G'}, S().encode_sig(s))));
  }

  Reply advance(Reply r) {
    if (auto* a = std::get_if<Abort>(&r)) return stop("forger aborted: " + a->reason);
    const Bytes& out = std::get<Bytes>(r);
    if (out.empty()) return stop("forger sent an empty message");
    if (out[0] == 'S') {
      if (queries_.size() >= cfg_.max_queries) return stop("forger exceeded its signing budget");
      Bytes m(out.begin() + 1, out.end());
      if (!S().valid_message(m)) return stop("signing query outside the message space");
      return answer(m);
    }
    std::optional<ots::Forgery> f;
    try {
      f = ots::parse_forgery(out);
    } catch (const DecodeError&) {
    }
    if (!f) return stop("forger broke the forgery schema");
    return extract(*f);
  }

  Reply extract(const ots::Forgery& f) {
    phase_ = Phase::done;
    if (std::find(queries_.begin(), queries_.end(), f.message) != queries_.end()) return Abort{"forgery is not fresh"};
    if (!S().verify(pk_, f.message, f.signature)) return Abort{"forgery does not verify"};
    const CaseSplit c = classify_forgery(S(), t_, f.message, f.signature);
    switch (cfg_.mode) {
      case Mode::col:
        if (c.kind != CaseKind::collision) return Abort{"forgery is an OTS forgery"};
        return ByteWriter().put_blob(c.honest_input).put_blob(c.forged_input).take();
      case Mode::spr:
        if (c.kind != CaseKind::collision || c.node != wstar_) return Abort{"collision is not at the planted node"};
        return c.forged_input;
      case Mode::ots:
        if (c.kind != CaseKind::ots_forgery || c.node != wstar_) return Abort{"OTS forgery is not at the planted node"};
        return ots::forgery_reply(c.message, c.signature);
    }
    return Abort{"unreachable"};
  }

  Config cfg_;
  RandomTape& tape_;
  std::unique_ptr<game::AdversarySession> forger_;
  std::unique_ptr<RandomTape> own_;
  DrawPlan plan_;
  Phase phase_ = Phase::start;
  std::uint64_t wstar_ = 0;
  TreeMaterial t_;
  Bytes pk_;
  std::vector<Bytes> queries_;
  Bytes pending_;
  Bytes relayed_msg_;
  std::optional<Bytes> relayed_sig_;
};

class TreeForgerTransformer final : public reduction::Transformer {
 public:
  TreeForgerTransformer(const TreeParams& p, TreeTarget target, std::size_t q)
      : scheme_(make_tree(p)), target_(target), mode_(mode_of(p, target)), q_(q) {}

  std::string name() const override {
    switch (mode_) {
      case Mode::col: return "tree-collision";
      case Mode::spr: return "tree-spr";
      case Mode::ots: return "tree-ots";
    }
    return "tree";
  }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override {
    return ots::forgery_interface(*scheme_, ots::ForgeryGameParams::many(q_));
  }
  std::string output_interface() const override { return tree_external_game(scheme_->params(), target_)->adversary_interface(); }

 protected:
  game::AdversaryHandle wrap(BlackBox box) const override {
    const TreeParams& p = scheme_->params();
    double guess = 0;
    if (mode_ == Mode::spr) guess = std::log2(static_cast<double>(p.leaves() - 1));
    if (mode_ == Mode::ots) guess = std::log2(static_cast<double>(p.node_count()));
    return std::make_shared<reduction::SessionAdversary<TreeSession>>(
        std::move(box), TreeSession::Config{scheme_, mode_, q_}, name() + "(...)", output_interface(),
        guess + scheme_->keygen_randomness_bits());
  }

 private:
  std::shared_ptr<const TreeScheme> scheme_;
  TreeTarget target_;
  Mode mode_;
  std::size_t q_;
};

}  // namespace

game::GamePtr tree_external_game(const TreeParams& p, TreeTarget target) {
  p.validate();
  switch (mode_of(p, target)) {
    case Mode::col: return prim::standard_game(prim::StandardGameKind::col, p.hash);
    case Mode::spr: return prim::standard_game(prim::StandardGameKind::spr, p.hash, spr_options(p));
    case Mode::ots: return ots::make_forgery_game(p.ots, ots::ForgeryGameParams::one_time_params());
  }
  throw std::logic_error("unknown tree target");
}

reduction::TransformerPtr tree_forger_transformer(const TreeParams& p, TreeTarget target, std::size_t max_queries) {
  if (max_queries < 1) throw std::invalid_argument("tree transformer needs a signing budget of at least 1");
  return std::make_shared<TreeForgerTransformer>(p, target, max_queries);
}

reduction::Reduction tree_reduction(const TreeParams& p, TreeTarget target, std::size_t max_queries) {
  auto scheme = make_tree(p);
  const Mode mode = mode_of(p, target);
  std::string notes;
  switch (mode) {
    case Mode::col: notes = "covers only forgeries whose path walk ends in a collision"; break;
    case Mode::spr:
      notes = "covers only collisions at the planted node, one of " + std::to_string(p.leaves() - 1) +
              " internal nodes; the measured relation carries that node-guess factor";
      break;
    case Mode::ots:
      notes = "covers only OTS forgeries at the planted node, one of " + std::to_string(p.node_count()) +
              " nodes; the measured relation carries that node-guess factor";
      break;
  }
  const std::string id = std::string("tree-") + (mode == Mode::col ? "col" : mode == Mode::spr ? "spr" : "ots");
  return reduction::make_reduction(id, tree_external_game(p, target), tree_forger_transformer(p, target, max_queries),
                                   ots::make_forgery_game(scheme, ots::ForgeryGameParams::many(max_queries)),
                                   reduction::BetaSpec::scalar(1), notes);
}

}  // namespace llab::tree
