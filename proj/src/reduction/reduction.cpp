#include "llab/reduction/reduction.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace llab::reduction {

using game::AdversarySession;
using game::PlayResult;
using game::Reply;

// ---- BetaSpec --------------------------------------------------------------

BetaSpec::BetaSpec(Form f, Rational c) : form_(f), coeff_(std::move(c)) {
  if (coeff_ < 0 || coeff_ > 1) throw std::invalid_argument("beta coefficient must lie in [0,1]");
}

BetaSpec BetaSpec::scalar(const Rational& c) { return BetaSpec(Form::scalar, c); }

BetaSpec BetaSpec::linear_over_poly(const Rational& numerator, std::vector<BigInt> poly, std::uint64_t n) {
  BigInt p = 0;
  BigInt power = 1;
  for (const BigInt& c : poly) {
    p += c * power;
    power *= n;
  }
  if (p <= 0) throw std::invalid_argument("p(n) must be positive");
  return BetaSpec(Form::linear_over_poly, numerator / Rational(p));
}

std::string BetaSpec::describe() const {
  const BigInt num = boost::multiprecision::numerator(coeff_);
  const BigInt den = boost::multiprecision::denominator(coeff_);
  if (num == 0) return "0";
  if (num == 1 && den == 1) return "x";
  if (num == 1) return "x/" + den.str();
  return rational_string(coeff_) + "*x";
}

BetaSpec BetaSpec::compose(const BetaSpec& inner) const {
  Form f = (form_ == Form::scalar && inner.form_ == Form::scalar) ? Form::scalar : Form::linear_over_poly;
  return BetaSpec(f, coeff_ * inner.coeff_);
}

// ---- reductions ------------------------------------------------------------

Reduction make_reduction(std::string id, GamePtr external, TransformerPtr transformer, GamePtr internal,
                         BetaSpec claimed_beta, std::string notes) {
  if (transformer->input_interface() != internal->adversary_interface()) {
    throw SchemaIncompatibility(id + ": transformer consumes " + transformer->input_interface() +
                                " but the internal game expects " + internal->adversary_interface());
  }
  if (transformer->output_interface() != external->adversary_interface()) {
    throw SchemaIncompatibility(id + ": transformer produces " + transformer->output_interface() +
                                " but the external game expects " + external->adversary_interface());
  }
  return Reduction{std::move(id), std::move(external), std::move(transformer), std::move(internal),
                   std::move(claimed_beta), std::move(notes)};
}

AdversaryHandle apply_transformer(const Reduction& r, const AdversaryHandle& a) {
  if (a->interface() != r.internal->adversary_interface()) {
    throw SchemaIncompatibility("adversary '" + a->name() + "' speaks " + a->interface() + ", reduction " + r.id +
                                " needs " + r.internal->adversary_interface());
  }
  AdversaryHandle out = r.transformer->apply(a);
  if (out->interface() != r.external->adversary_interface()) {
    throw SchemaIncompatibility(r.id + ": transformed adversary speaks " + out->interface());
  }
  return out;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

/// Logs every message delivered to the wrapped adversary, per spawn.
struct DeliveryLog {
  std::vector<std::vector<Bytes>> spawns;
};

class RecordingAdversary final : public game::Adversary {
 public:
  RecordingAdversary(AdversaryHandle inner, std::shared_ptr<DeliveryLog> log)
      : inner_(std::move(inner)), log_(std::move(log)) {}
  std::string name() const override { return inner_->name(); }
  std::string interface() const override { return inner_->interface(); }
  double randomness_bits() const override { return inner_->randomness_bits(); }
  std::unique_ptr<AdversarySession> spawn(RandomTape& tape) const override {
    struct Session final : AdversarySession {
      std::unique_ptr<AdversarySession> inner;
      std::shared_ptr<DeliveryLog> log;
      std::size_t slot;
      Reply respond(ByteView m) override {
        log->spawns[slot].emplace_back(m.begin(), m.end());
        return inner->respond(m);
      }
    };
    auto s = std::make_unique<Session>();
    s->log = log_;
    s->slot = log_->spawns.size();
    log_->spawns.emplace_back();
    s->inner = inner_->spawn(tape);
    return s;
  }

 private:
  AdversaryHandle inner_;
  std::shared_ptr<DeliveryLog> log_;
};

std::string short_hex(const Bytes& b) {
  std::string h = to_hex(b);
  return h.size() > 24 ? h.substr(0, 24) + "..." : h;
}

}  // namespace

StraightLineReport check_straight_line(const Reduction& r, const AdversaryHandle& a, const std::vector<Seed>& seeds) {
  if (!r.transformer->straight_line_claimed()) {
    throw std::invalid_argument(r.id + ": transformer does not claim to be straight-line");
  }
  StraightLineReport rep;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const Seed& seed = seeds[si];
    auto fail = [&](std::string diag, std::optional<std::size_t> idx) {
      rep.status = CheckStatus::fail;
      rep.seed_index = si;
      rep.delivered_index = idx;
      if (idx) rep.round = 2 * *idx;
      rep.diagnostic = std::move(diag);
      return rep;
    };

    // External run with the wrapped adversary's deliveries logged.
    auto ext_log = std::make_shared<DeliveryLog>();
    AdversaryHandle wrapped = apply_transformer(r, std::make_shared<RecordingAdversary>(a, ext_log));
    DrbgTape ext_ctape_inner(derive_seed(seed, role::kChallenger));
    RecordingTape ext_ctape(ext_ctape_inner);
    DrbgTape ext_atape(derive_seed(seed, role::kAdversary));
    auto session = wrapped->spawn(ext_atape);
    PlayResult ext = game::play(*r.external, ext_ctape, *session);

    auto* corr = dynamic_cast<const HonestRunCorrespondence*>(session.get());
    if (corr == nullptr) {
      rep.status = CheckStatus::inconclusive;
      rep.seed_index = si;
      rep.diagnostic = r.transformer->name() + " does not export an honest-run correspondence";
      return rep;
    }
    std::vector<Draw> script = corr->internal_challenger_draws(ext_ctape.draws());

    // Honest internal run with the same adversary coins.
    auto honest_log = std::make_shared<DeliveryLog>();
    auto honest_adv = std::make_shared<RecordingAdversary>(a, honest_log);
    ScriptedTape honest_ctape(std::move(script), derive_seed(seed, "honest-fallback"));
    DrbgTape honest_atape(derive_seed(seed, role::kAdversary));
    auto honest_session = honest_adv->spawn(honest_atape);
    try {
      game::play(*r.internal, honest_ctape, *honest_session);
    } catch (const ScriptMismatch& e) {
      return fail(std::string("embedding rule does not fit the internal challenger: ") + e.what(), std::nullopt);
    }
    const std::vector<Bytes>& honest = honest_log->spawns.at(0);

    std::vector<Bytes> delivered;
    for (const auto& s : ext_log->spawns) delivered.insert(delivered.end(), s.begin(), s.end());
    const bool restarted = ext_log->spawns.size() > 1;

    for (std::size_t i = 0; i < delivered.size(); ++i) {
      if (i >= honest.size()) {
        return fail("adversary received message " + std::to_string(i) + " beyond the end of the honest run" +
                        (restarted ? " (adversary was restarted)" : ""),
                    i);
      }
      if (delivered[i] != honest[i]) {
        return fail("message " + std::to_string(i) + " differs: external " + short_hex(delivered[i]) + " vs honest " +
                        short_hex(honest[i]) + (restarted ? " (adversary was restarted)" : ""),
                    i);
      }
    }
    if (restarted) {
      return fail("adversary was spawned " + std::to_string(ext_log->spawns.size()) + " times", delivered.size());
    }
    if (delivered.size() < honest.size() && ext.outcome.flag != game::RunFlag::adversary_abort) {
      return fail("external run stopped feeding the adversary after " + std::to_string(delivered.size()) +
                      " messages without aborting",
                  delivered.size());
    }
    ++rep.seeds_checked;
  }
  return rep;
}

DominanceReport check_behavioral_dominance(const Reduction& r, const AdversaryHandle& a1, const AdversaryHandle& a2,
                                           const std::vector<Seed>& seeds) {
  DominanceReport rep;
  AdversaryHandle t1 = apply_transformer(r, a1);
  AdversaryHandle t2 = apply_transformer(r, a2);
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    PlayResult i1 = game::run_game(*r.internal, a1, seeds[si]);
    PlayResult i2 = game::run_game(*r.internal, a2, seeds[si]);
    if (i1.transcript.serialize() != i2.transcript.serialize()) continue;
    ++rep.pairs_compared;
    PlayResult e1 = game::run_game(*r.external, t1, seeds[si]);
    PlayResult e2 = game::run_game(*r.external, t2, seeds[si]);
    if (e1.outcome.verdict != e2.outcome.verdict) {
      rep.status = CheckStatus::fail;
      rep.seed_index = si;
      rep.diagnostic = "identical internal transcripts but external verdicts " +
                       std::string(game::to_string(e1.outcome.verdict)) + " vs " +
                       std::string(game::to_string(e2.outcome.verdict));
      return rep;
    }
  }
  return rep;
}

EffectivenessReport check_effectiveness(const Reduction& r, const AdversaryHandle& a, std::uint64_t trials,
                                        double confidence, const Seed& seed) {
  EffectivenessReport rep;
  AdversaryHandle t = apply_transformer(r, a);
  rep.internal_estimate = game::estimate_value(*r.internal, a, trials, confidence, derive_seed(seed, "internal"));
  rep.external_estimate = game::estimate_value(*r.external, t, trials, confidence, derive_seed(seed, "external"));
  rep.claimed_lower_bound = r.claimed_beta.evaluate(rep.internal_estimate.point);
  const double lhs = rep.external_estimate.point + rep.external_estimate.half_width;
  const double rhs = rep.claimed_lower_bound - rep.internal_estimate.half_width;
  rep.satisfied = lhs >= rhs;
  rep.margin = lhs - rhs;
  rep.notes = r.notes;
  return rep;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string to_text(const GameValueEstimate& e) {
  std::ostringstream o;
  o << "point=" << fmt(e.point) << " half_width=" << fmt(e.half_width) << " trials=" << e.trials
    << " confidence=" << fmt(e.confidence) << " successes=" << e.successes << " aborts=" << e.aborts
    << " schema_violations=" << e.schema_violations << " budget_violations=" << e.budget_violations;
  return o.str();
}

std::string to_text(const EffectivenessReport& e) {
  std::ostringstream o;
  o << "internal: " << to_text(e.internal_estimate) << "\n";
  o << "external: " << to_text(e.external_estimate) << "\n";
  o << "claimed_lower_bound: " << fmt(e.claimed_lower_bound) << "\n";
  o << "satisfied: " << (e.satisfied ? "true" : "false") << "\n";
  o << "margin: " << fmt(e.margin) << "\n";
  if (!e.notes.empty()) o << "notes: " << e.notes << "\n";
  return o.str();
}

namespace {

class ComposedTransformer final : public Transformer {
 public:
  ComposedTransformer(TransformerPtr outer, TransformerPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  std::string name() const override { return outer_->name() + " o " + inner_->name(); }
  bool black_box() const override { return outer_->black_box() && inner_->black_box(); }
  bool straight_line_claimed() const override {
    return outer_->straight_line_claimed() && inner_->straight_line_claimed();
  }
  std::string input_interface() const override { return inner_->input_interface(); }
  std::string output_interface() const override { return outer_->output_interface(); }
  AdversaryHandle apply(const AdversaryHandle& a) const override { return outer_->apply(inner_->apply(a)); }

 protected:
  AdversaryHandle wrap(BlackBox) const override { throw std::logic_error("composed transformers apply directly"); }

 private:
  TransformerPtr outer_;
  TransformerPtr inner_;
};

}  // namespace

Reduction compose(const Reduction& outer, const Reduction& inner) {
  if (outer.internal->id() != inner.external->id()) {
    throw std::invalid_argument("cannot compose " + outer.id + " with " + inner.id + ": " + outer.internal->id() +
                                " is not " + inner.external->id());
  }
  Reduction r;
  r.id = "(" + outer.id + " o " + inner.id + ")";
  r.external = outer.external;
  r.internal = inner.internal;
  r.transformer = std::make_shared<ComposedTransformer>(outer.transformer, inner.transformer);
  r.claimed_beta = outer.claimed_beta.compose(inner.claimed_beta);
  r.notes = outer.notes;
  if (!inner.notes.empty()) r.notes += (r.notes.empty() ? "" : "; ") + inner.notes;
  return r;
}

LiftVerdict lift_check(const Reduction& r, const std::vector<AdversaryHandle>& test_adversaries,
                       const std::vector<std::pair<AdversaryHandle, AdversaryHandle>>& test_pairs,
                       const std::vector<Seed>& seeds, const LiftConfig& cfg) {
  if (test_adversaries.empty() || test_pairs.empty() || seeds.empty()) {
    throw std::invalid_argument("lift_check needs adversaries, pairs and seeds");
  }
  LiftVerdict v;
  v.conclusion_beta = r.claimed_beta;
  std::vector<std::string> notes;
  bool inconclusive = false;

  bool sl_ok = r.transformer->straight_line_claimed();
  if (!sl_ok) notes.push_back("transformer does not claim straight-line");
  for (const auto& a : test_adversaries) {
    if (!r.transformer->straight_line_claimed()) break;
    StraightLineReport s = check_straight_line(r, a, seeds);
    if (s.status == CheckStatus::inconclusive) inconclusive = true;
    if (s.status != CheckStatus::pass) {
      sl_ok = false;
      notes.push_back("straight-line " + std::string(to_string(s.status)) + " on " + a->name() + ": " + s.diagnostic);
    }
    v.straight_line.push_back(std::move(s));
  }
  v.straight_line_verified = sl_ok;

  bool dom_ok = true;
  for (const auto& [a1, a2] : test_pairs) {
    DominanceReport d = check_behavioral_dominance(r, a1, a2, seeds);
    v.value_dominating_tested += 1;
    if (d.status != CheckStatus::pass) {
      dom_ok = false;
      notes.push_back("value-dominance fails on (" + a1->name() + ", " + a2->name() + "): " + d.diagnostic);
    }
    v.dominance.push_back(std::move(d));
  }

  bool eff_ok = true;
  bool compatible = true;
  for (std::size_t i = 0; i < test_adversaries.size(); ++i) {
    const auto& a = test_adversaries[i];
    EffectivenessReport e = check_effectiveness(r, a, cfg.trials, cfg.confidence, derive_seed(cfg.seed, "lift", i));
    if (e.external_estimate.schema_violations > 0) {
      compatible = false;
      notes.push_back("transformed " + a->name() + " violated the external schema");
    }
    if (!e.satisfied) {
      eff_ok = false;
      notes.push_back("effectiveness not met on " + a->name() + " (margin " + fmt(e.margin) + ")");
    }
    v.effectiveness.push_back(std::move(e));
  }
  v.extendable_checked = compatible && eff_ok;

  if (inconclusive) {
    v.status = CheckStatus::inconclusive;
  } else {
    v.status = (v.extendable_checked && v.straight_line_verified && dom_ok) ? CheckStatus::pass : CheckStatus::fail;
  }
  std::string joined;
  for (const auto& n : notes) joined += (joined.empty() ? "" : "; ") + n;
  if (!r.notes.empty()) joined += (joined.empty() ? "" : "; ") + r.notes;
  v.notes = joined;
  return v;
}

std::string to_text(const LiftVerdict& v) {
  std::ostringstream o;
  o << "status: " << to_string(v.status) << "\n";
  o << "extendable_checked: " << (v.extendable_checked ? "true" : "false") << "\n";
  o << "straight_line_verified: " << (v.straight_line_verified ? "true" : "false") << "\n";
  o << "value_dominating_tested: " << v.value_dominating_tested << "\n";
  o << "conclusion_beta: " << v.conclusion_beta.describe() << "\n";
  for (std::size_t i = 0; i < v.straight_line.size(); ++i) {
    const auto& s = v.straight_line[i];
    o << "straight_line[" << i << "]: " << to_string(s.status) << " seeds=" << s.seeds_checked;
    if (s.round) o << " round=" << *s.round;
    if (!s.diagnostic.empty()) o << " diag=" << s.diagnostic;
    o << "\n";
  }
  for (std::size_t i = 0; i < v.dominance.size(); ++i) {
    o << "dominance[" << i << "]: " << to_string(v.dominance[i].status)
      << " compared=" << v.dominance[i].pairs_compared << "\n";
  }
  for (std::size_t i = 0; i < v.effectiveness.size(); ++i) {
    std::istringstream lines(to_text(v.effectiveness[i]));
    std::string line;
    while (std::getline(lines, line)) o << "effectiveness[" << i << "]." << line << "\n";
  }
  if (!v.notes.empty()) o << "notes: " << v.notes << "\n";
  return o.str();
}

std::vector<Seed> seed_range(const Seed& base, std::size_t n) {
  std::vector<Seed> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(derive_seed(base, "seed-range", i));
  return out;
}

}  // namespace llab::reduction
