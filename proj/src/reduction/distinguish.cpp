#include "llab/reduction/distinguish.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace llab::reduction {

namespace {

class ConstantSampler final : public Sampler {
 public:
  explicit ConstantSampler(Bytes v) : v_(std::move(v)) {}
  std::string name() const override { return "const:" + to_hex(v_); }
  std::size_t output_length() const override { return v_.size(); }
  double randomness_bits() const override { return 0; }
  Bytes sample(RandomTape&) const override { return v_; }

 private:
  Bytes v_;
};

class TableSampler final : public Sampler {
 public:
  TableSampler(std::string name, std::vector<Bytes> outcomes, std::vector<std::uint64_t> weights)
      : name_(std::move(name)), outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
    if (outcomes_.empty() || outcomes_.size() != weights_.size()) {
      throw std::invalid_argument("table sampler needs one weight per outcome");
    }
    for (const auto& o : outcomes_) {
      if (o.size() != outcomes_.front().size()) throw std::invalid_argument("table sampler outcomes differ in length");
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), std::uint64_t{0});
    if (total_ == 0) throw std::invalid_argument("table sampler weights sum to zero");
  }
  std::string name() const override { return name_; }
  std::size_t output_length() const override { return outcomes_.front().size(); }
  double randomness_bits() const override { return std::log2(static_cast<double>(total_)); }
  Bytes sample(RandomTape& tape) const override {
    std::uint64_t u = tape.draw(total_);
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (u < weights_[i]) return outcomes_[i];
      u -= weights_[i];
    }
    throw std::logic_error("table sampler fell off the end");
  }

 private:
  std::string name_;
  std::vector<Bytes> outcomes_;
  std::vector<std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

class DistinguishingGame final : public game::GameDef {
 public:
  DistinguishingGame(SamplerPtr l, SamplerPtr r) : l_(std::move(l)), r_(std::move(r)) {}
  std::string id() const override { return "distinguish/v1[" + l_->name() + "|" + r_->name() + "]"; }
  std::string adversary_interface() const override { return distinguishing_interface(l_->output_length()); }
  std::size_t round_bound() const override { return 2; }
  std::size_t max_payload() const override { return std::max<std::size_t>(l_->output_length(), 2); }
  double randomness_bits() const override { return 1 + std::max(l_->randomness_bits(), r_->randomness_bits()); }
  std::unique_ptr<game::ChallengerSession> open(RandomTape& tape) const override {
    struct S final : game::ChallengerSession {
      const DistinguishingGame& g;
      RandomTape& tape;
      std::uint8_t b = 0;
      S(const DistinguishingGame& gg, RandomTape& t) : g(gg), tape(t) {}
      game::Step start() override {
        b = static_cast<std::uint8_t>(tape.draw(2));
        return game::Send{b == 0 ? g.l_->sample(tape) : g.r_->sample(tape)};
      }
      game::Step receive(ByteView reply) override {
        if (reply.size() != 1 || reply[0] > 1) throw game::SchemaViolation("guess must be one byte, 0 or 1");
        return game::Finish{reply[0] == b ? game::Verdict::succ : game::Verdict::fail, {'b', b}, {}};
      }
    };
    return std::make_unique<S>(*this, tape);
  }

 private:
  SamplerPtr l_, r_;
};

Rational abs_adv(const Rational& v) {
  Rational a = 2 * v - 1;
  return a < 0 ? Rational(-a) : a;
}

}  // namespace

SamplerPtr constant_sampler(Bytes value) { return std::make_shared<ConstantSampler>(std::move(value)); }

SamplerPtr table_sampler(std::string name, std::vector<Bytes> outcomes, std::vector<std::uint64_t> weights) {
  return std::make_shared<TableSampler>(std::move(name), std::move(outcomes), std::move(weights));
}

std::string distinguishing_interface(std::size_t length) {
  return "distinguish/v1[len" + std::to_string(length) + "]";
}

game::GamePtr build_distinguishing_game(SamplerPtr left, SamplerPtr right) {
  if (left->output_length() != right->output_length()) {
    throw std::invalid_argument("samplers produce different output lengths");
  }
  return std::make_shared<DistinguishingGame>(std::move(left), std::move(right));
}

game::AdversaryHandle predicate_distinguisher(std::string name, std::size_t length,
                                              std::function<bool(ByteView)> predicate) {
  return game::make_adversary(std::move(name), distinguishing_interface(length), 0, [predicate](RandomTape&) {
    return [predicate](ByteView m) -> game::Reply { return Bytes{static_cast<std::uint8_t>(predicate(m) ? 1 : 0)}; };
  });
}

HybridReport hybrid_chain_check(const HybridChain& chain, const game::AdversaryHandle& distinguisher,
                                unsigned randomness_budget) {
  const auto& d = chain.samplers;
  if (d.size() < 2) throw std::invalid_argument("a hybrid chain needs at least two samplers");
  for (const auto& s : d) {
    if (s->output_length() != d.front()->output_length()) {
      throw std::invalid_argument("hybrid samplers must share one output length");
    }
  }
  HybridReport rep;
  rep.summed_advantage = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    Rational v = game::exact_value(*build_distinguishing_game(d[i], d[i + 1]), distinguisher, randomness_budget);
    rep.summed_advantage += abs_adv(v);
    rep.adjacent_values.push_back(v);
  }
  rep.end_to_end = game::exact_value(*build_distinguishing_game(d.front(), d.back()), distinguisher,
                                     randomness_budget);
  rep.end_to_end_advantage = abs_adv(rep.end_to_end);
  rep.holds = rep.end_to_end_advantage <= rep.summed_advantage;
  return rep;
}

}  // namespace llab::reduction
