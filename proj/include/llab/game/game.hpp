#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "llab/bytes.hpp"
#include "llab/numeric.hpp"
#include "llab/seed.hpp"
#include "llab/tape.hpp"

namespace llab::game {

enum class Role : std::uint8_t { challenger = 0, adversary = 1 };

struct Message {
  Role sender = Role::challenger;
  std::uint32_t round = 0;
  Bytes payload;
  bool operator==(const Message&) const = default;
};

struct Transcript {
  std::vector<Message> messages;

  /// Rounds are 0, 1, 2, ... and senders alternate starting with the challenger.
  bool well_formed() const;
  /// Canonical byte form, used for byte-identical comparisons.
  Bytes serialize() const;
  bool operator==(const Transcript&) const = default;
};

enum class Verdict { succ, fail };

/// Why a run ended the way it did. Everything other than `none` and
/// `adversary_abort` marks a run that did not follow the rules.
enum class RunFlag { none, adversary_abort, schema_violation, query_budget_exceeded, round_bound_exceeded };

std::string_view to_string(Verdict v);
std::string_view to_string(RunFlag f);

struct GameOutcome {
  Verdict verdict = Verdict::fail;
  RunFlag flag = RunFlag::none;
  std::string diagnostic;
  bool succ() const { return verdict == Verdict::succ; }
};

/// Thrown by a challenger when the adversary's reply does not parse under the game's schema.
class SchemaViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by a challenger when the adversary asks for more queries than the game allows.
class QueryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- challenger side -------------------------------------------------------

struct Send {
  Bytes payload;
};

/// Terminal step. A non-empty reveal is appended to the transcript as a last
/// challenger message so auditors can re-check the verdict from the transcript.
struct Finish {
  Verdict verdict = Verdict::fail;
  Bytes reveal;
  std::string diagnostic;
};

using Step = std::variant<Send, Finish>;

class ChallengerSession {
 public:
  virtual ~ChallengerSession() = default;
  virtual Step start() = 0;
  virtual Step receive(ByteView reply) = 0;
};

class GameDef {
 public:
  virtual ~GameDef() = default;
  /// Name plus parameters. Two games with equal ids run the same challenger.
  virtual std::string id() const = 0;
  /// Maximum number of exchanged messages, not counting a final reveal.
  virtual std::size_t round_bound() const = 0;
  virtual std::size_t max_payload() const = 0;
  /// Upper bound on log2 of the number of challenger random tapes.
  virtual double randomness_bits() const = 0;
  /// Schema descriptor the adversary must speak.
  virtual std::string adversary_interface() const = 0;
  virtual std::unique_ptr<ChallengerSession> open(RandomTape& tape) const = 0;
};

using GamePtr = std::shared_ptr<const GameDef>;

// ---- adversary side --------------------------------------------------------

struct Abort {
  std::string reason;
};

using Reply = std::variant<Bytes, Abort>;

class AdversarySession {
 public:
  virtual ~AdversarySession() = default;
  virtual Reply respond(ByteView message) = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual std::string interface() const = 0;
  /// Upper bound on log2 of the number of adversary random tapes.
  virtual double randomness_bits() const = 0;
  /// A fresh instance. The session draws every random choice from `tape`,
  /// which outlives it.
  virtual std::unique_ptr<AdversarySession> spawn(RandomTape& tape) const = 0;
};

using AdversaryHandle = std::shared_ptr<const Adversary>;

using SessionFn = std::function<Reply(ByteView)>;
using SessionFactory = std::function<SessionFn(RandomTape&)>;

/// Adversary whose sessions are closures returned by `factory`.
AdversaryHandle make_adversary(std::string name, std::string interface, double randomness_bits,
                               SessionFactory factory);

// ---- running games ---------------------------------------------------------

struct PlayResult {
  GameOutcome outcome;
  Transcript transcript;
};

/// One run against an already spawned adversary session.
PlayResult play(const GameDef& game, RandomTape& challenger_tape, AdversarySession& adversary);

/// Challenger and adversary tapes come from derive_seed(seed, "challenger") and
/// derive_seed(seed, "adversary"). Throws std::invalid_argument if the
/// adversary's interface differs from the game's.
PlayResult run_game(const GameDef& game, const AdversaryHandle& adversary, const Seed& seed);

struct GameValueEstimate {
  double point = 0.0;
  std::uint64_t trials = 0;
  double confidence = 0.0;
  double half_width = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t aborts = 0;
  std::uint64_t schema_violations = 0;
  std::uint64_t budget_violations = 0;
  std::uint64_t round_violations = 0;
};

/// sqrt(ln(2/(1-confidence)) / (2 trials)).
double hoeffding_half_width(std::uint64_t trials, double confidence);

/// Trial i runs under derive_seed(seed, "trial", i). Trials may run on several
/// threads; the result does not depend on the thread count.
GameValueEstimate estimate_value(const GameDef& game, const AdversaryHandle& adversary, std::uint64_t trials,
                                 double confidence, const Seed& seed, unsigned threads = 0);

/// Exact success probability over every challenger and adversary tape.
/// Throws BudgetExceeded if the declared or actual randomness exceeds budget_bits
/// or if budget_bits > 24.
Rational exact_value(const GameDef& game, const AdversaryHandle& adversary, unsigned budget_bits);

/// Highest point estimate; ties go to the earlier adversary. Every adversary is
/// estimated under the same seed.
std::pair<AdversaryHandle, GameValueEstimate> max_value_over(const GameDef& game,
                                                             const std::vector<AdversaryHandle>& adversaries,
                                                             std::uint64_t trials, double confidence,
                                                             const Seed& seed);

}  // namespace llab::game
