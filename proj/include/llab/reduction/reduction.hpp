#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "llab/game/game.hpp"
#include "llab/numeric.hpp"

namespace llab::reduction {

using game::AdversaryHandle;
using game::GamePtr;
using game::GameValueEstimate;

/// Claimed success relation beta(x) = c * x.
///
/// The scalar form stores c directly; linear_over_poly stores numerator / p(n)
/// for a polynomial p given by its coefficients (constant term first).
class BetaSpec {
 public:
  enum class Form { scalar, linear_over_poly };

  static BetaSpec scalar(const Rational& c);
  static BetaSpec linear_over_poly(const Rational& numerator, std::vector<BigInt> poly, std::uint64_t n);

  Form form() const { return form_; }
  const Rational& coefficient() const { return coeff_; }
  /// Human-readable form, e.g. "x/32" or "3/4*x".
  std::string describe() const;

  Rational evaluate(const Rational& x) const { return coeff_ * x; }
  double evaluate(double x) const { return to_double(coeff_) * x; }

  /// (this o inner)(x) = this(inner(x)).
  BetaSpec compose(const BetaSpec& inner) const;

  bool operator==(const BetaSpec& o) const { return coeff_ == o.coeff_; }

 private:
  BetaSpec(Form f, Rational c);
  Form form_;
  Rational coeff_;
};

/// The only view a black-box transformer gets of the adversary it wraps.
class BlackBox {
 public:
  explicit BlackBox(AdversaryHandle a) : a_(std::move(a)) {}
  std::unique_ptr<game::AdversarySession> spawn(RandomTape& tape) const { return a_->spawn(tape); }
  double randomness_bits() const { return a_->randomness_bits(); }

 private:
  AdversaryHandle a_;
};

/// Implemented by transformer sessions that can name the honest internal run
/// matching the external run they just took part in.
class HonestRunCorrespondence {
 public:
  virtual ~HonestRunCorrespondence() = default;
  /// Challenger draws for the internal game that reproduce, for the wrapped
  /// adversary, exactly the messages it saw inside the external run.
  virtual std::vector<Draw> internal_challenger_draws(std::span<const Draw> external_challenger_draws) const = 0;
};

/// Maps internal-game adversaries to external-game adversaries.
///
/// Convention for sessions: the wrapped adversary is spawned on the session's own
/// tape, and the transformer takes its own choices from tape.fork("transformer").
/// That keeps the wrapped adversary's coins identical to an honest run.
class Transformer {
 public:
  virtual ~Transformer() = default;
  virtual std::string name() const = 0;
  virtual bool black_box() const { return true; }
  virtual bool straight_line_claimed() const = 0;
  virtual std::string input_interface() const = 0;
  virtual std::string output_interface() const = 0;
  /// Black-box transformers only see a BlackBox; white-box ones override this.
  virtual AdversaryHandle apply(const AdversaryHandle& a) const { return wrap(BlackBox(a)); }

 protected:
  virtual AdversaryHandle wrap(BlackBox box) const = 0;
};

using TransformerPtr = std::shared_ptr<const Transformer>;

class SchemaIncompatibility : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Reduction {
  std::string id;
  GamePtr external;
  TransformerPtr transformer;
  GamePtr internal;
  BetaSpec claimed_beta = BetaSpec::scalar(1);
  std::string notes;
};

/// Throws SchemaIncompatibility if the transformer's interfaces do not match the games.
Reduction make_reduction(std::string id, GamePtr external, TransformerPtr transformer, GamePtr internal,
                         BetaSpec claimed_beta, std::string notes = {});

/// Throws SchemaIncompatibility if `a` does not speak the internal interface.
AdversaryHandle apply_transformer(const Reduction& r, const AdversaryHandle& a);

enum class CheckStatus { pass, fail, inconclusive };
std::string_view to_string(CheckStatus s);

struct StraightLineReport {
  CheckStatus status = CheckStatus::pass;
  std::size_t seeds_checked = 0;
  /// First failing seed, message index delivered to the adversary, and the
  /// internal-game round of that message.
  std::optional<std::size_t> seed_index;
  std::optional<std::size_t> delivered_index;
  std::optional<std::size_t> round;
  std::string diagnostic;
};

/// Per seed: the messages the wrapped adversary receives in one external run must
/// equal (or, when the external run aborted, be a prefix of) the messages it
/// receives in the honest internal run the transformer names, with the adversary
/// run exactly once. Throws std::invalid_argument unless straight-line is claimed.
StraightLineReport check_straight_line(const Reduction& r, const AdversaryHandle& a, const std::vector<Seed>& seeds);

struct DominanceReport {
  CheckStatus status = CheckStatus::pass;
  /// Seeds on which the two adversaries' internal transcripts were identical.
  std::size_t pairs_compared = 0;
  std::optional<std::size_t> seed_index;
  std::string diagnostic;
};

DominanceReport check_behavioral_dominance(const Reduction& r, const AdversaryHandle& a1, const AdversaryHandle& a2,
                                           const std::vector<Seed>& seeds);

struct EffectivenessReport {
  GameValueEstimate internal_estimate;
  GameValueEstimate external_estimate;
  double claimed_lower_bound = 0.0;
  bool satisfied = false;
  double margin = 0.0;
  std::string notes;
};

/// Internal and external estimates use derive_seed(seed, "internal") and
/// derive_seed(seed, "external").
EffectivenessReport check_effectiveness(const Reduction& r, const AdversaryHandle& a, std::uint64_t trials,
                                        double confidence, const Seed& seed);

/// Stable text form, one "key: value" per line.
std::string to_text(const EffectivenessReport& e);
std::string to_text(const GameValueEstimate& e);

/// Requires outer.internal and inner.external to be the same game (by id).
Reduction compose(const Reduction& outer, const Reduction& inner);

struct LiftVerdict {
  CheckStatus status = CheckStatus::pass;
  bool extendable_checked = false;
  bool straight_line_verified = false;
  std::size_t value_dominating_tested = 0;
  BetaSpec conclusion_beta = BetaSpec::scalar(1);
  std::string notes;
  std::vector<StraightLineReport> straight_line;
  std::vector<DominanceReport> dominance;
  std::vector<EffectivenessReport> effectiveness;
};

struct LiftConfig {
  std::uint64_t trials = 2000;
  double confidence = 0.99;
  Seed seed;
};

LiftVerdict lift_check(const Reduction& r, const std::vector<AdversaryHandle>& test_adversaries,
                       const std::vector<std::pair<AdversaryHandle, AdversaryHandle>>& test_pairs,
                       const std::vector<Seed>& seeds, const LiftConfig& cfg);

std::string to_text(const LiftVerdict& v);

/// n seeds derived from `base`.
std::vector<Seed> seed_range(const Seed& base, std::size_t n);

}  // namespace llab::reduction
