#include <doctest.h>

#include <random>

#include "llab/primitives/family.hpp"
#include "llab/primitives/fixtures.hpp"
#include "llab/primitives/games.hpp"
#include "llab/reduction/distinguish.hpp"
#include "llab/reduction/fixtures.hpp"
#include "llab/reduction/reduction.hpp"

using namespace llab;
using namespace llab::reduction;
using game::AdversaryHandle;
using game::Reply;

namespace {

Seed base(std::string_view tag) { return derive_seed(Seed{}, tag); }

prim::FunctionFamilySpec owf4() { return prim::weak_owf(4); }

game::GamePtr inv4() { return prim::standard_game(prim::StandardGameKind::inv, owf4()); }

// Same function as inv_bruteforce, written differently: scans from the top and
// keeps the last match seen, i.e. the least preimage.
AdversaryHandle inv_bruteforce_twin(const prim::FunctionFamilySpec& spec) {
  return game::make_adversary("twin-inverter", prim::standard_interface(prim::StandardGameKind::inv, spec), 0,
                              [spec](RandomTape&) {
                                return [spec](ByteView y) -> Reply {
                                  const auto target = static_cast<std::uint32_t>(prim::to_u64(y));
                                  std::optional<std::uint32_t> best;
                                  for (std::uint32_t x = (1u << spec.input_bits); x-- > 0;) {
                                    if (prim::eval_small(spec, 0, x) == target) best = x;
                                  }
                                  if (!best) return game::Abort{"no preimage"};
                                  return prim::from_u64(*best, spec.input_bytes());
                                };
                              });
}

Rational rat(long p, long q) { return Rational(BigInt(p), BigInt(q)); }

SamplerPtr two_bit(const std::string& name, std::vector<std::uint64_t> w) {
  return table_sampler(name, {{0}, {1}, {2}, {3}}, std::move(w));
}

// Statistical distance between two weight vectors over the same outcomes.
Rational stat_distance(const std::vector<std::uint64_t>& p, const std::vector<std::uint64_t>& q) {
  std::uint64_t tp = 0, tq = 0;
  for (auto v : p) tp += v;
  for (auto v : q) tq += v;
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = rat(static_cast<long>(p[i]), static_cast<long>(tp)) - rat(static_cast<long>(q[i]), static_cast<long>(tq));
    sum += d < 0 ? Rational(-d) : d;
  }
  return sum / 2;
}

}  // namespace

TEST_CASE("BetaSpec composition is exact rational multiplication") {
  BetaSpec half = BetaSpec::scalar(rat(1, 2));
  BetaSpec third = BetaSpec::scalar(rat(1, 3));
  CHECK(half.compose(third).coefficient() == rat(1, 6));
  CHECK(half.compose(third).evaluate(Rational(1)) == rat(1, 6));
  CHECK(BetaSpec::linear_over_poly(1, {0, 2}, 16).describe() == "x/32");
  CHECK(BetaSpec::scalar(1).describe() == "x");
  CHECK(BetaSpec::scalar(0).describe() == "0");
  CHECK_THROWS_AS(BetaSpec::scalar(rat(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(BetaSpec::linear_over_poly(1, {0}, 5), std::invalid_argument);
}

TEST_CASE("every BetaSpec is nondecreasing and stays in [0,1] on a 1000-point grid") {
  std::vector<BetaSpec> specs{BetaSpec::scalar(0), BetaSpec::scalar(1), BetaSpec::scalar(rat(255, 524288)),
                              BetaSpec::linear_over_poly(1, {0, 2}, 16), BetaSpec::linear_over_poly(1, {3}, 7),
                              rompel_composed(16).claimed_beta};
  for (const auto& b : specs) {
    Rational prev = -1;
    for (int i = 0; i < 1000; ++i) {
      Rational x = rat(i, 999);
      Rational y = b.evaluate(x);
      CHECK(y >= prev);
      CHECK(y >= 0);
      CHECK(y <= 1);
      prev = y;
    }
  }
}

TEST_CASE("the composed three-step chain at inner length 16 has beta x/4128") {
  auto chain = rompel_chain(16);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].claimed_beta.coefficient() == rat(1, 16));
  CHECK(chain[1].claimed_beta.coefficient() == rat(1, 3));
  // 5*16 + ceil(log2 16) + 2 = 86
  CHECK(chain[2].claimed_beta.coefficient() == rat(1, 86));
  Reduction r = rompel_composed(16);
  CHECK(r.claimed_beta.coefficient() == rat(1, 16 * 3 * 86));
  CHECK(r.claimed_beta.describe() == "x/4128");
  CHECK(r.external->id() == chain[0].external->id());
  CHECK(r.internal->id() == chain[2].internal->id());
  CHECK(ceil_log2(16) == 4);
  CHECK(ceil_log2(17) == 5);
  CHECK(ceil_log2(1) == 0);
}

TEST_CASE("compose rejects mismatched games and keeps an identity neutral") {
  auto chain = rompel_chain(16);
  CHECK_THROWS_AS(compose(chain[0], chain[2]), std::invalid_argument);
  Reduction id = identity_reduction(chain[0].external);
  CHECK(compose(id, chain[0]).claimed_beta == chain[0].claimed_beta);
  for (int i = 0; i <= 10; ++i) {
    CHECK(compose(id, chain[0]).claimed_beta.evaluate(rat(i, 10)) == chain[0].claimed_beta.evaluate(rat(i, 10)));
  }
}

TEST_CASE("make_reduction and apply_transformer reject schema mismatches") {
  auto g = inv4();
  auto other = prim::standard_game(prim::StandardGameKind::inv, prim::weak_owf(6));
  CHECK_THROWS_AS(make_reduction("bad", g, identity_transformer(g->adversary_interface()), other, BetaSpec::scalar(1)),
                  SchemaIncompatibility);
  Reduction id = identity_reduction(g);
  CHECK_THROWS_AS(apply_transformer(id, prim::inv_bruteforce(prim::weak_owf(6))), SchemaIncompatibility);
}

TEST_CASE("the identity wrapper is behaviorally identical to the adversary it wraps") {
  auto g = inv4();
  Reduction id = identity_reduction(g);
  for (const auto& a : {prim::inv_bruteforce(owf4()), prim::inv_random_guess(owf4())}) {
    AdversaryHandle t = apply_transformer(id, a);
    for (const Seed& s : seed_range(base("identity"), 50)) {
      CHECK(game::run_game(*g, t, s).transcript == game::run_game(*g, a, s).transcript);
    }
  }
}

TEST_CASE("composition is associative in behavior and in beta") {
  auto g = inv4();
  auto iface = g->adversary_interface();
  Reduction a = make_reduction("a", g, xor_reply_transformer(iface, 1), g, BetaSpec::scalar(rat(1, 2)));
  Reduction b = make_reduction("b", g, xor_reply_transformer(iface, 2), g, BetaSpec::scalar(rat(1, 3)));
  Reduction c = make_reduction("c", g, xor_reply_transformer(iface, 8), g, BetaSpec::scalar(rat(2, 5)));
  Reduction left = compose(compose(a, b), c);
  Reduction right = compose(a, compose(b, c));
  CHECK(left.claimed_beta == right.claimed_beta);
  CHECK(left.claimed_beta.coefficient() == rat(1, 15));
  for (const auto& adv : {prim::inv_bruteforce(owf4()), prim::inv_random_guess(owf4())}) {
    AdversaryHandle tl = apply_transformer(left, adv);
    AdversaryHandle tr = apply_transformer(right, adv);
    for (const Seed& s : seed_range(base("assoc"), 50)) {
      auto l = game::run_game(*g, tl, s);
      auto r = game::run_game(*g, tr, s);
      CHECK(l.transcript == r.transcript);
      CHECK(l.outcome.verdict == r.outcome.verdict);
    }
  }
}

TEST_CASE("check_straight_line: identity passes, rewinding fails at the restart") {
  auto g = inv4();
  auto seeds = seed_range(base("sl"), 100);
  Reduction id = identity_reduction(g);
  StraightLineReport ok = check_straight_line(id, prim::inv_bruteforce(owf4()), seeds);
  CHECK(ok.status == CheckStatus::pass);
  CHECK(ok.seeds_checked == 100);

  Reduction rw = make_reduction("rewind", g, rewinding_transformer(g->adversary_interface()), g, BetaSpec::scalar(1));
  StraightLineReport bad = check_straight_line(rw, prim::inv_random_guess(owf4()), seeds);
  CHECK(bad.status == CheckStatus::fail);
  REQUIRE(bad.delivered_index.has_value());
  CHECK(*bad.delivered_index == 1);
  CHECK(*bad.round == 2);
  CHECK(bad.diagnostic.find("restarted") != std::string::npos);

  Reduction nb = make_reduction("nb", g, name_branching_transformer(g->adversary_interface(), "x"), g,
                                BetaSpec::scalar(1));
  CHECK_THROWS_AS(check_straight_line(nb, prim::inv_bruteforce(owf4()), seeds), std::invalid_argument);
}

TEST_CASE("a straight-line claim without an exported correspondence is inconclusive") {
  auto g = inv4();
  Reduction x = make_reduction("xor", g, xor_reply_transformer(g->adversary_interface(), 0), g, BetaSpec::scalar(1));
  StraightLineReport r = check_straight_line(x, prim::inv_bruteforce(owf4()), seed_range(base("inc"), 3));
  CHECK(r.status == CheckStatus::inconclusive);
}

TEST_CASE("behavioral dominance: same program and I/O-equal twins pass, name branching fails") {
  auto g = inv4();
  auto seeds = seed_range(base("dom"), 100);
  // Certify I/O equality of the twins over the whole 4-bit output space.
  auto a1 = prim::inv_bruteforce(owf4());
  auto a2 = inv_bruteforce_twin(owf4());
  for (std::uint32_t y = 0; y < 16; ++y) {
    DrbgTape t1(base("t1")), t2(base("t2"));
    Bytes yb{static_cast<std::uint8_t>(y)};
    Reply r1 = a1->spawn(t1)->respond(yb);
    Reply r2 = a2->spawn(t2)->respond(yb);
    CHECK(r1.index() == r2.index());
    if (r1.index() == 0) CHECK(std::get<Bytes>(r1) == std::get<Bytes>(r2));
  }

  Reduction id = identity_reduction(g);
  CHECK(check_behavioral_dominance(id, a1, a1, seeds).status == CheckStatus::pass);
  DominanceReport twins = check_behavioral_dominance(id, a1, a2, seeds);
  CHECK(twins.status == CheckStatus::pass);
  CHECK(twins.pairs_compared == 100);

  Reduction nb = make_reduction("nb", g, name_branching_transformer(g->adversary_interface(), a1->name()), g,
                                BetaSpec::scalar(1));
  DominanceReport bad = check_behavioral_dominance(nb, a1, a2, seeds);
  CHECK(bad.status == CheckStatus::fail);
  CHECK(bad.seed_index.has_value());
}

TEST_CASE("straight-line plus dominance gives equal exact external values for equal internal behavior") {
  auto g = inv4();
  Reduction id = identity_reduction(g);
  auto a1 = prim::inv_bruteforce(owf4());
  auto a2 = inv_bruteforce_twin(owf4());
  Rational i1 = game::exact_value(*g, a1, 16);
  Rational i2 = game::exact_value(*g, a2, 16);
  REQUIRE(i1 == i2);
  CHECK(game::exact_value(*g, apply_transformer(id, a1), 16) == game::exact_value(*g, apply_transformer(id, a2), 16));
}

TEST_CASE("check_effectiveness is reproducible and honors the summed half-widths") {
  auto g = inv4();
  Reduction id = identity_reduction(g);
  auto a = prim::inv_random_guess(owf4());
  EffectivenessReport r1 = check_effectiveness(id, a, 400, 0.95, base("eff"));
  EffectivenessReport r2 = check_effectiveness(id, a, 400, 0.95, base("eff"));
  CHECK(to_text(r1) == to_text(r2));
  CHECK(r1.claimed_lower_bound == doctest::Approx(r1.internal_estimate.point));
  const bool expected = r1.external_estimate.point + r1.external_estimate.half_width >=
                        r1.claimed_lower_bound - r1.internal_estimate.half_width;
  CHECK(r1.satisfied == expected);
  CHECK(r1.satisfied);

  EffectivenessReport zero = check_effectiveness(id, prim::always_abort(g->adversary_interface()), 100, 0.95, base("z"));
  CHECK(zero.internal_estimate.point == 0.0);
  CHECK(zero.claimed_lower_bound == 0.0);
  CHECK(zero.satisfied);
}

TEST_CASE("lift_check passes on the identity reduction and fails on the rewinding one") {
  auto g = inv4();
  auto seeds = seed_range(base("lift"), 30);
  auto a1 = prim::inv_bruteforce(owf4());
  auto a2 = inv_bruteforce_twin(owf4());
  LiftConfig cfg{300, 0.95, base("lift-cfg")};
  LiftVerdict ok = lift_check(identity_reduction(g), {a1, a2}, {{a1, a2}}, seeds, cfg);
  CHECK(ok.status == CheckStatus::pass);
  CHECK(ok.straight_line_verified);
  CHECK(ok.extendable_checked);
  CHECK(ok.value_dominating_tested == 1);
  CHECK(ok.conclusion_beta == BetaSpec::scalar(1));

  Reduction rw = make_reduction("rewind", g, rewinding_transformer(g->adversary_interface()), g, BetaSpec::scalar(1));
  LiftVerdict bad = lift_check(rw, {a1}, {{a1, a2}}, seeds, cfg);
  CHECK(bad.status == CheckStatus::fail);
  CHECK_FALSE(bad.straight_line_verified);
  CHECK(bad.notes.find("straight-line") != std::string::npos);

  Reduction x = make_reduction("xor", g, xor_reply_transformer(g->adversary_interface(), 0), g, BetaSpec::scalar(1));
  CHECK(lift_check(x, {a1}, {{a1, a2}}, seeds, cfg).status == CheckStatus::inconclusive);
  CHECK_THROWS_AS(lift_check(x, {}, {{a1, a2}}, seeds, cfg), std::invalid_argument);
}

TEST_CASE("distinguishing game values") {
  auto uniform = two_bit("u", {1, 1, 1, 1});
  auto same = build_distinguishing_game(uniform, uniform);
  auto first_zero = predicate_distinguisher("x==0", 1, [](ByteView s) { return s[0] == 0; });
  auto parity = predicate_distinguisher("odd", 1, [](ByteView s) { return (s[0] & 1) != 0; });
  CHECK(game::exact_value(*same, first_zero, 16) == rat(1, 2));
  CHECK(game::exact_value(*same, parity, 16) == rat(1, 2));

  auto zeros = constant_sampler({0x00});
  auto ones = constant_sampler({0xff});
  auto by_first = predicate_distinguisher("is-ff", 1, [](ByteView s) { return s[0] == 0xff; });
  CHECK(game::exact_value(*build_distinguishing_game(zeros, ones), by_first, 8) == 1);

  std::vector<std::uint64_t> p{1, 1, 1, 1}, q{2, 1, 1, 0};
  Rational sd = stat_distance(p, q);
  CHECK(sd == rat(1, 4));
  auto opt = predicate_distinguisher("opt", 1, [](ByteView s) { return s[0] == 0; });
  CHECK(game::exact_value(*build_distinguishing_game(two_bit("p", p), two_bit("q", q)), opt, 16) == (1 + sd) / 2);

  CHECK_THROWS_AS(build_distinguishing_game(zeros, constant_sampler({0, 0})), std::invalid_argument);
}

TEST_CASE("hybrid chains telescope") {
  auto d = predicate_distinguisher("x==0", 1, [](ByteView s) { return s[0] == 0; });

  auto u = two_bit("u", {1, 1, 1, 1});
  HybridReport flat = hybrid_chain_check({{u, u, u}}, d, 16);
  CHECK(flat.end_to_end_advantage == 0);
  CHECK(flat.summed_advantage == 0);
  CHECK(flat.holds);

  std::vector<std::uint64_t> w0{1, 1, 1, 1}, w1{2, 1, 1, 0}, w2{3, 1, 0, 0};
  REQUIRE(stat_distance(w0, w1) == rat(1, 4));
  REQUIRE(stat_distance(w1, w2) == rat(1, 4));
  HybridReport h = hybrid_chain_check({{two_bit("d0", w0), two_bit("d1", w1), two_bit("d2", w2)}}, d, 16);
  REQUIRE(h.adjacent_values.size() == 2);
  CHECK(h.end_to_end_advantage <= rat(1, 2));
  CHECK(h.end_to_end_advantage <= h.summed_advantage);
  CHECK(h.holds);

  HybridReport one = hybrid_chain_check({{two_bit("d0", w0), two_bit("d1", w1)}}, d, 16);
  CHECK(one.end_to_end_advantage == one.summed_advantage);
  CHECK(one.holds);

  CHECK_THROWS_AS(hybrid_chain_check({{u}}, d, 16), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_chain_check({{u, constant_sampler({0, 0})}}, d, 16), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_chain_check({{u, u}}, d, 1), BudgetExceeded);
}

TEST_CASE("telescoping holds on random chains and distinguishers") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t len = 2 + rng() % 4;
    HybridChain chain;
    for (std::size_t i = 0; i < len; ++i) {
      std::vector<std::uint64_t> w(4);
      do {
        for (auto& v : w) v = rng() % 5;
      } while (w[0] + w[1] + w[2] + w[3] == 0);
      chain.samplers.push_back(two_bit("r" + std::to_string(i), w));
    }
    const unsigned mask = static_cast<unsigned>(rng() % 16);
    auto d = predicate_distinguisher("mask", 1, [mask](ByteView s) { return ((mask >> s[0]) & 1) != 0; });
    HybridReport h = hybrid_chain_check(chain, d, 16);
    CHECK(h.holds);
    CHECK(h.end_to_end_advantage <= h.summed_advantage);
  }
}
