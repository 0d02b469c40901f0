#include "llab/reduction/fixtures.hpp"

#include <stdexcept>

namespace llab::reduction {

using game::AdversarySession;
using game::Reply;

namespace {

class IdentityTransformer final : public Transformer {
 public:
  explicit IdentityTransformer(std::string iface) : iface_(std::move(iface)) {}
  std::string name() const override { return "identity"; }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override { return iface_; }
  std::string output_interface() const override { return iface_; }

 protected:
  AdversaryHandle wrap(BlackBox box) const override {
    struct Session final : AdversarySession, HonestRunCorrespondence {
      std::unique_ptr<AdversarySession> inner;
      Reply respond(ByteView m) override { return inner->respond(m); }
      std::vector<Draw> internal_challenger_draws(std::span<const Draw> ext) const override {
        return {ext.begin(), ext.end()};
      }
    };
    struct Adv final : game::Adversary {
      BlackBox box;
      std::string iface;
      Adv(BlackBox b, std::string i) : box(std::move(b)), iface(std::move(i)) {}
      std::string name() const override { return "identity(...)"; }
      std::string interface() const override { return iface; }
      double randomness_bits() const override { return box.randomness_bits(); }
      std::unique_ptr<AdversarySession> spawn(RandomTape& tape) const override {
        auto s = std::make_unique<Session>();
        s->inner = box.spawn(tape);
        return s;
      }
    };
    return std::make_shared<Adv>(std::move(box), iface_);
  }

 private:
  std::string iface_;
};

class RewindingTransformer final : public Transformer {
 public:
  explicit RewindingTransformer(std::string iface) : iface_(std::move(iface)) {}
  std::string name() const override { return "rewinding"; }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override { return iface_; }
  std::string output_interface() const override { return iface_; }

 protected:
  AdversaryHandle wrap(BlackBox box) const override {
    struct Session final : AdversarySession, HonestRunCorrespondence {
      const BlackBox* box = nullptr;
      RandomTape* tape = nullptr;
      std::unique_ptr<RandomTape> rewind_tape;
      std::unique_ptr<AdversarySession> inner;
      bool restarted = false;
      Reply respond(ByteView m) override {
        Reply r = inner->respond(m);
        if (!restarted) {
          restarted = true;
          rewind_tape = tape->fork("rewind");
          inner = box->spawn(*rewind_tape);
          return inner->respond(m);
        }
        return r;
      }
      std::vector<Draw> internal_challenger_draws(std::span<const Draw> ext) const override {
        return {ext.begin(), ext.end()};
      }
    };
    struct Adv final : game::Adversary {
      BlackBox box;
      std::string iface;
      Adv(BlackBox b, std::string i) : box(std::move(b)), iface(std::move(i)) {}
      std::string name() const override { return "rewinding(...)"; }
      std::string interface() const override { return iface; }
      double randomness_bits() const override { return 2 * box.randomness_bits(); }
      std::unique_ptr<AdversarySession> spawn(RandomTape& tape) const override {
        auto s = std::make_unique<Session>();
        s->box = &box;
        s->tape = &tape;
        s->inner = box.spawn(tape);
        return s;
      }
    };
    return std::make_shared<Adv>(std::move(box), iface_);
  }

 private:
  std::string iface_;
};

class NameBranchingTransformer final : public Transformer {
 public:
  NameBranchingTransformer(std::string iface, std::string fav) : iface_(std::move(iface)), fav_(std::move(fav)) {}
  std::string name() const override { return "name-branching"; }
  bool black_box() const override { return false; }
  bool straight_line_claimed() const override { return false; }
  std::string input_interface() const override { return iface_; }
  std::string output_interface() const override { return iface_; }
  AdversaryHandle apply(const AdversaryHandle& a) const override {
    if (a->name() == fav_) return a;
    return game::make_adversary("name-branching(" + a->name() + ")", iface_, 0, [](RandomTape&) {
      return [](ByteView) -> Reply { return game::Abort{"name not favoured"}; };
    });
  }

 protected:
  AdversaryHandle wrap(BlackBox) const override { throw std::logic_error("white-box transformer"); }

 private:
  std::string iface_;
  std::string fav_;
};

class XorReplyTransformer final : public Transformer {
 public:
  XorReplyTransformer(std::string iface, std::uint8_t mask) : iface_(std::move(iface)), mask_(mask) {}
  std::string name() const override { return "xor-" + std::to_string(mask_); }
  bool straight_line_claimed() const override { return true; }
  std::string input_interface() const override { return iface_; }
  std::string output_interface() const override { return iface_; }

 protected:
  AdversaryHandle wrap(BlackBox box) const override {
    auto shared = std::make_shared<BlackBox>(std::move(box));
    const std::uint8_t mask = mask_;
    return game::make_adversary(name() + "(...)", iface_, shared->randomness_bits(), [shared, mask](RandomTape& tape) {
      std::shared_ptr<AdversarySession> inner = shared->spawn(tape);
      return [inner, mask](ByteView m) -> Reply {
        Reply r = inner->respond(m);
        if (auto* b = std::get_if<Bytes>(&r)) {
          for (auto& c : *b) c ^= mask;
        }
        return r;
      };
    });
  }

 private:
  std::string iface_;
  std::uint8_t mask_;
};

class PlaceholderGame final : public game::GameDef {
 public:
  explicit PlaceholderGame(std::string name) : name_(std::move(name)) {}
  std::string id() const override { return "placeholder/v1[" + name_ + "]"; }
  std::string adversary_interface() const override { return "opaque/v1"; }
  std::size_t round_bound() const override { return 2; }
  std::size_t max_payload() const override { return 64; }
  double randomness_bits() const override { return 1; }
  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override {
    // One coin; the adversary wins by echoing it back. Only the game's identity
    // matters inside abstract chains, but it still runs.
    struct S final : game::ChallengerSession {
      RandomTape& t;
      std::uint8_t c = 0;
      explicit S(RandomTape& tt) : t(tt) {}
      game::Step start() override {
        c = static_cast<std::uint8_t>(t.draw(2));
        return game::Send{{c}};
      }
      game::Step receive(ByteView r) override {
        if (r.size() != 1) throw game::SchemaViolation("expected one byte");
        return game::Finish{r[0] == c ? game::Verdict::succ : game::Verdict::fail, {}, {}};
      }
    };
    return std::make_unique<S>(tape);
  }

 private:
  std::string name_;
};

}  // namespace

TransformerPtr identity_transformer(const std::string& interface) {
  return std::make_shared<IdentityTransformer>(interface);
}

Reduction identity_reduction(const game::GamePtr& g) {
  return make_reduction("identity[" + g->id() + "]", g, identity_transformer(g->adversary_interface()), g,
                        BetaSpec::scalar(1));
}

TransformerPtr rewinding_transformer(const std::string& interface) {
  return std::make_shared<RewindingTransformer>(interface);
}

TransformerPtr name_branching_transformer(const std::string& interface, std::string favourite) {
  return std::make_shared<NameBranchingTransformer>(interface, std::move(favourite));
}

TransformerPtr xor_reply_transformer(const std::string& interface, std::uint8_t mask) {
  return std::make_shared<XorReplyTransformer>(interface, mask);
}

game::GamePtr placeholder_game(std::string name) { return std::make_shared<PlaceholderGame>(std::move(name)); }

unsigned ceil_log2(std::uint64_t v) {
  unsigned r = 0;
  while ((std::uint64_t{1} << r) < v) ++r;
  return r;
}

std::vector<Reduction> rompel_chain(std::uint64_t l) {
  if (l < 1) throw std::invalid_argument("chain length parameter must be positive");
  const std::string tag = "[l=" + std::to_string(l) + "]";
  auto inv = placeholder_game("inv" + tag);
  auto inv1 = placeholder_game("inv'" + tag);
  auto col2 = placeholder_game("col''" + tag);
  auto col1 = placeholder_game("col'" + tag);
  auto id = identity_transformer("opaque/v1");
  std::vector<Reduction> out;
  out.push_back(make_reduction("rompel-1", inv, id, inv1, BetaSpec::linear_over_poly(1, {0, 1}, l)));
  out.push_back(make_reduction("rompel-2", inv1, id, col2, BetaSpec::linear_over_poly(1, {3}, l)));
  const BigInt constant = BigInt(ceil_log2(l)) + 2;
  out.push_back(make_reduction("rompel-3", col2, id, col1, BetaSpec::linear_over_poly(1, {constant, 5}, l)));
  return out;
}

Reduction rompel_composed(std::uint64_t l) {
  auto c = rompel_chain(l);
  return compose(compose(c[0], c[1]), c[2]);
}

}  // namespace llab::reduction
