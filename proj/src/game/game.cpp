#include "llab/game/game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace llab::game {

bool Transcript::well_formed() const {
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const Message& m = messages[i];
    if (m.round != i) return false;
    Role expected = (i % 2 == 0) ? Role::challenger : Role::adversary;
    if (m.sender != expected) return false;
  }
  return true;
}

Bytes Transcript::serialize() const {
  ByteWriter w;
  w.put_u32(static_cast<std::uint32_t>(messages.size()));
  for (const Message& m : messages) {
    w.put_u8(static_cast<std::uint8_t>(m.sender));
    w.put_u32(m.round);
    w.put_blob(m.payload);
  }
  return w.take();
}

std::string_view to_string(Verdict v) { return v == Verdict::succ ? "succ" : "fail"; }

std::string_view to_string(RunFlag f) {
  switch (f) {
    case RunFlag::none: return "none";
    case RunFlag::adversary_abort: return "adversary_abort";
    case RunFlag::schema_violation: return "schema_violation";
    case RunFlag::query_budget_exceeded: return "query_budget_exceeded";
    case RunFlag::round_bound_exceeded: return "round_bound_exceeded";
  }
  return "unknown";
}

namespace {

class FnAdversary final : public Adversary {
 public:
  FnAdversary(std::string name, std::string interface, double bits, SessionFactory factory)
      : name_(std::move(name)), interface_(std::move(interface)), bits_(bits), factory_(std::move(factory)) {}

  std::string name() const override { return name_; }
  std::string interface() const override { return interface_; }
  double randomness_bits() const override { return bits_; }

  std::unique_ptr<AdversarySession> spawn(RandomTape& tape) const override {
    struct Session final : AdversarySession {
      SessionFn fn;
      Reply respond(ByteView m) override { return fn(m); }
    };
    auto s = std::make_unique<Session>();
    s->fn = factory_(tape);
    return s;
  }

 private:
  std::string name_;
  std::string interface_;
  double bits_;
  SessionFactory factory_;
};

GameOutcome flagged(RunFlag flag, std::string diag) {
  return GameOutcome{Verdict::fail, flag, std::move(diag)};
}

}  // namespace

AdversaryHandle make_adversary(std::string name, std::string interface, double randomness_bits,
                               SessionFactory factory) {
  return std::make_shared<FnAdversary>(std::move(name), std::move(interface), randomness_bits, std::move(factory));
}

PlayResult play(const GameDef& game, RandomTape& challenger_tape, AdversarySession& adversary) {
  PlayResult r;
  auto& msgs = r.transcript.messages;
  const std::size_t bound = game.round_bound();
  const std::size_t max_payload = game.max_payload();
  auto session = game.open(challenger_tape);
  Step step = session->start();

  for (;;) {
    if (auto* fin = std::get_if<Finish>(&step)) {
      if (!fin->reveal.empty()) {
        msgs.push_back({Role::challenger, static_cast<std::uint32_t>(msgs.size()), std::move(fin->reveal)});
      }
      r.outcome = GameOutcome{fin->verdict, RunFlag::none, std::move(fin->diagnostic)};
      return r;
    }
    auto& send = std::get<Send>(step);
    if (send.payload.size() > max_payload) {
      throw std::logic_error(game.id() + ": challenger message exceeds the payload bound");
    }
    if (msgs.size() + 2 > bound) {
      r.outcome = flagged(RunFlag::round_bound_exceeded, "round bound " + std::to_string(bound) + " reached");
      return r;
    }
    msgs.push_back({Role::challenger, static_cast<std::uint32_t>(msgs.size()), send.payload});

    Reply reply = adversary.respond(msgs.back().payload);
    if (auto* ab = std::get_if<Abort>(&reply)) {
      r.outcome = flagged(RunFlag::adversary_abort, ab->reason);
      return r;
    }
    Bytes& out = std::get<Bytes>(reply);
    if (out.size() > max_payload) {
      r.outcome = flagged(RunFlag::schema_violation, "reply of " + std::to_string(out.size()) +
                                                         " bytes exceeds the payload bound");
      return r;
    }
    msgs.push_back({Role::adversary, static_cast<std::uint32_t>(msgs.size()), std::move(out)});

    try {
      step = session->receive(msgs.back().payload);
    } catch (const SchemaViolation& e) {
      r.outcome = flagged(RunFlag::schema_violation, e.what());
      return r;
    } catch (const DecodeError& e) {
      r.outcome = flagged(RunFlag::schema_violation, e.what());
      return r;
    } catch (const QueryBudgetExceeded& e) {
      r.outcome = flagged(RunFlag::query_budget_exceeded, e.what());
      return r;
    }
  }
}

PlayResult run_game(const GameDef& game, const AdversaryHandle& adversary, const Seed& seed) {
  if (adversary->interface() != game.adversary_interface()) {
    throw std::invalid_argument("adversary '" + adversary->name() + "' speaks " + adversary->interface() +
                                " but game " + game.id() + " expects " + game.adversary_interface());
  }
  DrbgTape ctape(derive_seed(seed, role::kChallenger));
  DrbgTape atape(derive_seed(seed, role::kAdversary));
  auto session = adversary->spawn(atape);
  return play(game, ctape, *session);
}

double hoeffding_half_width(std::uint64_t trials, double confidence) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0,1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(trials)));
}

GameValueEstimate estimate_value(const GameDef& game, const AdversaryHandle& adversary, std::uint64_t trials,
                                 double confidence, const Seed& seed, unsigned threads) {
  GameValueEstimate est;
  est.half_width = hoeffding_half_width(trials, confidence);
  est.trials = trials;
  est.confidence = confidence;

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&](unsigned w) {
    GameValueEstimate local;
    try {
      for (std::uint64_t i = w; i < trials; i += threads) {
        PlayResult r = run_game(game, adversary, derive_seed(seed, role::kTrial, i));
        local.successes += r.outcome.succ();
        switch (r.outcome.flag) {
          case RunFlag::adversary_abort: ++local.aborts; break;
          case RunFlag::schema_violation: ++local.schema_violations; break;
          case RunFlag::query_budget_exceeded: ++local.budget_violations; break;
          case RunFlag::round_bound_exceeded: ++local.round_violations; break;
          case RunFlag::none: break;
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      return;
    }
    std::lock_guard lock(mu);
    est.successes += local.successes;
    est.aborts += local.aborts;
    est.schema_violations += local.schema_violations;
    est.budget_violations += local.budget_violations;
    est.round_violations += local.round_violations;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  est.point = static_cast<double>(est.successes) / static_cast<double>(trials);
  return est;
}

Rational exact_value(const GameDef& game, const AdversaryHandle& adversary, unsigned budget_bits) {
  if (budget_bits > 24) throw BudgetExceeded("exact_value budget is capped at 24 bits");
  const double declared = game.randomness_bits() + adversary->randomness_bits();
  if (declared > budget_bits) {
    throw BudgetExceeded("declared randomness " + std::to_string(declared) + " bits exceeds the budget of " +
                         std::to_string(budget_bits));
  }
  if (adversary->interface() != game.adversary_interface()) {
    throw std::invalid_argument("adversary interface does not match game " + game.id());
  }
  EnumerationTape tape(budget_bits);
  // Success mass grouped by leaf denominator keeps the rational sum short.
  std::map<std::uint64_t, std::uint64_t> mass;
  do {
    auto session = adversary->spawn(tape);
    PlayResult r = play(game, tape, *session);
    if (r.outcome.succ()) ++mass[tape.leaf_denominator()];
  } while (tape.advance());
  Rational total = 0;
  for (auto [den, count] : mass) total += Rational(BigInt(count), BigInt(den));
  return total;
}

std::pair<AdversaryHandle, GameValueEstimate> max_value_over(const GameDef& game,
                                                             const std::vector<AdversaryHandle>& adversaries,
                                                             std::uint64_t trials, double confidence,
                                                             const Seed& seed) {
  if (adversaries.empty()) throw std::invalid_argument("max_value_over needs at least one adversary");
  std::pair<AdversaryHandle, GameValueEstimate> best{adversaries.front(),
                                                     estimate_value(game, adversaries.front(), trials, confidence, seed)};
  for (std::size_t i = 1; i < adversaries.size(); ++i) {
    GameValueEstimate e = estimate_value(game, adversaries[i], trials, confidence, seed);
    if (e.point > best.second.point) best = {adversaries[i], e};
  }
  return best;
}

}  // namespace llab::game
