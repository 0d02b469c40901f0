#include <doctest.h>

#include <cmath>
#include <set>

#include "llab/fdh/fdh.hpp"
#include "llab/fdh/fixtures.hpp"
#include "llab/fdh/oracle.hpp"
#include "llab/fdh/reductions.hpp"
#include "llab/primitives/games.hpp"
#include "llab/primitives/tdp.hpp"

using namespace llab;
using namespace llab::fdh;

namespace {

Seed seed_of(std::string_view tag, std::uint64_t i = 0) { return derive_seed(Seed{}, tag, i); }

Bytes idx(std::uint64_t i) { return prim::from_u64(i, 4); }

RoGameParams stand_in(RoGameParams p) {
  p.flavor = RoGameParams::Flavor::quantum_stand_in;
  return p;
}

game::AdversaryHandle aborter(const std::string& iface) {
  return game::make_adversary("aborter", iface, 0, [](RandomTape&) {
    return [](ByteView) -> game::Reply { return game::Abort{"gives up"}; };
  });
}

// Hashes one fixed message, then forges on it with the factored key.
game::AdversaryHandle single_query_forger(const RoGameParams& p) {
  return fdh_bruteforce_forger(p, 1);
}

}  // namespace

TEST_CASE("lazy oracle is consistent and seed-determined") {
  LazyOracle a(seed_of("lazy"), OracleRange::integers(1000));
  LazyOracle b(seed_of("lazy"), OracleRange::integers(1000));
  LazyOracle c(seed_of("lazy-other"), OracleRange::integers(1000));
  std::size_t differ = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const BigInt v = a.query(idx(i));
    CHECK(v == a.query(idx(i)));
    CHECK(v == b.query(idx(i)));
    CHECK(v < 1000);
    if (v != c.query(idx(i))) ++differ;
  }
  CHECK(a.observed() == 200);
  CHECK(differ > 150);
  CHECK_FALSE(a.peek(idx(999)).has_value());
  a.program(idx(999), 5);
  CHECK(a.query(idx(999)) == 5);
  CHECK_THROWS_AS(a.program(idx(0), 1), std::logic_error);
  CHECK_THROWS_AS(LazyOracle(seed_of("x"), OracleRange::integers(0)), std::invalid_argument);
}

TEST_CASE("tape-backed oracle draws fresh values in first-query order") {
  ScriptedTape tape({Draw{10, 3}, Draw{10, 7}}, seed_of("fallback"));
  LazyOracle o(tape, OracleRange::integers(10));
  CHECK(o.query(idx(42)) == 3);
  CHECK(o.query(idx(1)) == 7);
  CHECK(o.query(idx(42)) == 3);
  CHECK(o.query_log() == std::vector<Bytes>{idx(42), idx(1)});
}

TEST_CASE("oracle outputs are uniform over a small range and respect units") {
  LazyOracle o(seed_of("freq"), OracleRange::integers(4));
  std::array<int, 4> counts{};
  const int n = 8000;
  for (int i = 0; i < n; ++i) ++counts[o.query(idx(i)).convert_to<int>()];
  // sd = sqrt(n * 1/4 * 3/4) ~ 39; 5 sd each side.
  for (int c : counts) CHECK(std::abs(c - n / 4) < 200);

  LazyOracle u(seed_of("units"), OracleRange::units(15));
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    const BigInt v = u.query(idx(i));
    CHECK(prim::in_units(15, v));
    seen.insert(v.convert_to<int>());
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("semi-constant oracle follows its response rule") {
  const BigInt target = 7;
  SemiConstantOracle h = sample_sc_oracle(Rational(1, 4), target, BigInt(256), seed_of("sc-rule"));
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Bytes x = idx(i);
    if (h.o2(x)) {
      CHECK(h.query(x) == target);
    } else {
      CHECK(h.query(x) == h.o1(x));
    }
  }

  const prim::TdpKeyPair kp = prim::tdp_keygen(seed_of("sc-key"), 12);
  const BigInt t = prim::tdp_forward(kp.pk, 5);
  SemiConstantOracle g = sample_sc_oracle(Rational(1, 3), t, kp.pk, seed_of("sc-perm"));
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Bytes x = idx(i);
    CHECK(prim::in_units(kp.pk.n, g.o1(x)));
    CHECK(g.query(x) == (g.o2(x) ? t : prim::tdp_forward(kp.pk, g.o1(x))));
  }
}

TEST_CASE("semi-constant oracle marginals") {
  // lambda = 1/16 over 256 outputs: P[H(x) = t] = 1/16 + (15/16)/256.
  const double lambda = 1.0 / 16;
  const double p_target = lambda + (1 - lambda) / 256.0;
  SemiConstantOracle h = sample_sc_oracle(Rational(1, 16), BigInt(200), BigInt(256), seed_of("sc-marg"));
  const int n = 40000;
  int hit = 0, o2 = 0;
  for (int i = 0; i < n; ++i) {
    if (h.query(idx(i)) == 200) ++hit;
    if (h.o2(idx(i))) ++o2;
  }
  const double sd_t = std::sqrt(p_target * (1 - p_target) / n);
  const double sd_l = std::sqrt(lambda * (1 - lambda) / n);
  CHECK(std::abs(hit / double(n) - p_target) < 5 * sd_t);
  CHECK(std::abs(o2 / double(n) - lambda) < 5 * sd_l);
}

TEST_CASE("o2 values at distinct points are independent") {
  SemiConstantOracle h = sample_sc_oracle(Rational(1, 2), BigInt(0), BigInt(64), seed_of("sc-indep"));
  const int n = 20000;
  int both = 0;
  for (int i = 0; i < n; ++i) {
    if (h.o2(idx(2 * i)) && h.o2(idx(2 * i + 1))) ++both;
  }
  const double sd = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(both / double(n) - 0.25) < 5 * sd);
}

TEST_CASE("lambda outside (0,1) is rejected and tiny lambda works") {
  CHECK_THROWS_AS(sample_sc_oracle(Rational(0), BigInt(1), BigInt(16), seed_of("l0")), std::invalid_argument);
  CHECK_THROWS_AS(sample_sc_oracle(Rational(1), BigInt(1), BigInt(16), seed_of("l1")), std::invalid_argument);
  CHECK_THROWS_AS(sample_sc_oracle(Rational(1, 2), BigInt(16), BigInt(16), seed_of("lt")), std::invalid_argument);
  SemiConstantOracle h = sample_sc_oracle(Rational(1, std::int64_t(1) << 30), BigInt(3), BigInt(16), seed_of("tiny"));
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    hits += h.o2(idx(i)) ? 1 : 0;
    CHECK(h.query(idx(i)) == h.o1(idx(i)));
  }
  CHECK(hits == 0);
  CHECK(h.observed() == 1000);
}

TEST_CASE("distance budget and lambda choice") {
  CHECK(sc_distance_budget(1, Rational(1, 4)) == Rational(1, 6));
  CHECK(sc_distance_budget(0, Rational(1, 4)) == 0);
  CHECK(sc_distance_budget(2, Rational(1, 400)) == Rational(1, 3750));
  CHECK(to_double(sc_distance_budget(2, Rational(1, 400))) == doctest::Approx(2.6667e-4).epsilon(1e-3));
  CHECK(sc_distance_budget(10, Rational(1, 2)) == 1);

  CHECK(choose_lambda(1, 0).lambda == Rational(1, 2));
  CHECK(choose_lambda(8, 0).lambda == Rational(1, 128));
  CHECK(choose_lambda(0, 0).lambda == Rational(1, 2));
  for (std::uint64_t qh : {1, 2, 8, 30}) {
    for (std::uint64_t qs : {0, 1, 3, 7}) {
      const LambdaChoice c = choose_lambda(qh, qs);
      CHECK(c.lambda == Rational(1, 2 * (qs + 1) * qh * qh));
      Rational q4(qh * qh * qh * qh);
      Rational want = Rational(8, 3) * q4 * c.lambda * c.lambda;
      if (want > 1) want = 1;
      CHECK(c.distance_budget == want);
      Rational na(1);
      for (std::uint64_t i = 0; i < qs; ++i) na *= 1 - c.lambda;
      CHECK(c.no_abort_lower_bound == na);
      CHECK_FALSE(c.rationale.empty());
    }
  }
  CHECK(choose_lambda(5, 3).distance_budget == Rational(1, 24));
}

TEST_CASE("FDH signatures verify and are deterministic") {
  auto s = instantiate_fdh(16, seed_of("fdh-oracle"));
  CHECK(s->id().rfind("fdh/v1[n=16;", 0) == 0);
  CHECK_THROWS_AS(FdhScheme(8, Seed{}), std::invalid_argument);
  DrbgTape tape(seed_of("fdh-keys"));
  const ots::KeyPair kp = s->keygen(tape);
  const prim::TdpPublicKey pk = s->decode_pk(kp.pk);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Bytes m = idx(i * 7919);
    const Bytes sig = s->sign_once(kp.sk, m);
    REQUIRE(s->verify(kp.pk, m, sig));
    CHECK(sig == s->sign_once(kp.sk, m));
    const BigInt sigma = s->decode_sig(sig);
    CHECK(prim::tdp_forward(pk, sigma) == s->hash(pk, m));
    // f is a permutation, so sigma + 1 never verifies.
    CHECK_FALSE(s->verify(kp.pk, m, s->encode_sig(pk, (sigma + 1) % pk.n)));
    const Bytes other = idx(i * 7919 + 1);
    const bool same_hash = s->hash(pk, other) == s->hash(pk, m);
    CHECK(s->verify(kp.pk, other, sig) == same_hash);
  }
  CHECK_FALSE(s->verify(kp.pk, idx(1), Bytes{}));
  CHECK_FALSE(s->verify(Bytes{1, 2, 3}, idx(1), s->sign_once(kp.sk, idx(1))));
}

TEST_CASE("RO forgery game judges forgeries") {
  RoGameParams p;
  p.max_hash_queries = 4;
  p.max_sign_queries = 2;
  auto g = ro_forgery_game(p);
  CHECK(g->adversary_interface() == ro_forgery_interface(p));
  RoGameParams q = p;
  q.flavor = RoGameParams::Flavor::quantum_stand_in;
  CHECK(ro_forgery_interface(q) != ro_forgery_interface(p));

  auto brute = fdh_bruteforce_forger(p, 4, 2);
  auto est = game::estimate_value(*g, brute, 200, 0.99, seed_of("ro-brute"));
  CHECK(est.point == 1.0);
  CHECK(game::estimate_value(*g, aborter(ro_forgery_interface(p)), 50, 0.99, seed_of("ro-abort")).point == 0.0);
  auto greedy = fdh_bruteforce_forger(p, 5);
  const game::PlayResult r = game::run_game(*g, greedy, seed_of("ro-greedy"));
  CHECK(r.outcome.flag == game::RunFlag::query_budget_exceeded);
  CHECK_FALSE(r.outcome.succ());
}

TEST_CASE("classical transformer: aborting forger gives nothing") {
  RoGameParams p;
  auto r = fdh_classical_reduction(p);
  auto est = game::estimate_value(*r.external, reduction::apply_transformer(r, aborter(ro_forgery_interface(p))), 100,
                                  0.99, seed_of("cl-abort"));
  CHECK(est.point == 0.0);
}

TEST_CASE("classical transformer: a single-query forger inverts every time") {
  RoGameParams p;
  p.max_hash_queries = 1;
  auto r = fdh_classical_reduction(p);
  CHECK(r.claimed_beta.evaluate(1.0) == doctest::Approx(1.0));
  auto t = reduction::apply_transformer(r, single_query_forger(p));
  auto est = game::estimate_value(*r.external, t, 300, 0.99, seed_of("cl-single"));
  CHECK(est.point == 1.0);
}

TEST_CASE("classical transformer meets x / q_H on the brute-force forger") {
  RoGameParams p;
  p.modulus_bits = 12;
  p.max_hash_queries = 8;
  p.max_sign_queries = 2;
  auto r = fdh_classical_reduction(p);
  CHECK(r.claimed_beta.evaluate(1.0) == doctest::Approx(1.0 / 8));
  auto f = fdh_bruteforce_forger(p, 8, 2);
  auto e = reduction::check_effectiveness(r, f, 4000, 0.99, seed_of("cl-eff"));
  CHECK(e.internal_estimate.point == 1.0);
  CHECK(e.satisfied);
  // With j uniform and one forged point among eight, success is close to 1/8.
  CHECK(std::abs(e.external_estimate.point - 1.0 / 8) < 3 * e.external_estimate.half_width + 1e-9);
}

TEST_CASE("classical transformer is straight-line") {
  for (std::size_t qs : {0u, 2u}) {
    RoGameParams p;
    p.max_hash_queries = 6;
    p.max_sign_queries = qs;
    auto r = fdh_classical_reduction(p);
    for (const auto& f : {fdh_bruteforce_forger(p, 6, qs), fdh_bruteforce_forger(p, 3, qs)}) {
      auto rep = reduction::check_straight_line(r, f, reduction::seed_range(seed_of("cl-sl", qs), 100));
      CHECK_MESSAGE(rep.status == reduction::CheckStatus::pass, rep.diagnostic);
      CHECK(rep.seeds_checked == 100);
    }
  }
}

TEST_CASE("interpreter: forgeries on o2 = 0 points never help") {
  RoGameParams p;
  p.max_hash_queries = 16;
  InterpreterConfig cfg{Rational(1, 2), 0, 16};
  auto r = fdh_interpreter_reduction(p, cfg);
  RoGameParams q = p;
  q.max_hash_queries = cfg.max_hash_queries;
  CHECK_FALSE(r.transformer->straight_line_claimed());
  auto unique = fdh_sc_probe_forger(stand_in(q), 16, false);
  auto est = game::estimate_value(*r.external, reduction::apply_transformer(r, unique), 400, 0.99, seed_of("in-uniq"));
  // Only a lone target hit among 16 probes (prob 16 / 2^16) or an o1 collision with b could succeed.
  CHECK(est.successes <= 2);
}

TEST_CASE("interpreter: forgeries on o2 = 1 points become outer forgeries") {
  RoGameParams p;
  p.max_hash_queries = 16;
  InterpreterConfig cfg{Rational(1, 2), 0, 16};
  auto r = fdh_interpreter_reduction(p, cfg);
  RoGameParams q = p;
  q.max_hash_queries = cfg.max_hash_queries;
  auto rep = fdh_sc_probe_forger(stand_in(q), 16, true);
  auto t = reduction::apply_transformer(r, rep);
  std::size_t succ = 0, nonabort = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const game::PlayResult res = game::run_game(*r.external, t, seed_of("in-rep", i));
    if (res.outcome.flag == game::RunFlag::adversary_abort) continue;
    ++nonabort;
    succ += res.outcome.succ() ? 1 : 0;
  }
  CHECK(nonabort > 190);
  CHECK(succ == nonabort);
}

TEST_CASE("interpreter enforces its query bounds") {
  RoGameParams p;
  p.max_hash_queries = 16;
  InterpreterConfig cfg{Rational(1, 2), 0, 4};
  auto r = fdh_interpreter_reduction(p, cfg);
  RoGameParams q = p;
  q.max_hash_queries = cfg.max_hash_queries;
  auto t = reduction::apply_transformer(r, fdh_sc_probe_forger(stand_in(q), 5, true));
  for (std::uint64_t i = 0; i < 20; ++i) {
    const game::PlayResult res = game::run_game(*r.external, t, seed_of("in-bound", i));
    CHECK(res.outcome.flag == game::RunFlag::adversary_abort);
    // The interpreter used exactly one outer hash query before aborting.
    CHECK(res.transcript.messages.size() == 3);
  }
  auto ok = reduction::apply_transformer(r, fdh_sc_probe_forger(stand_in(q), 4, true));
  const game::PlayResult res = game::run_game(*r.external, ok, seed_of("in-bound-ok"));
  CHECK(res.outcome.flag != game::RunFlag::query_budget_exceeded);
}

TEST_CASE("interpreter beta and composition") {
  RoGameParams p;
  p.max_hash_queries = 4;
  p.max_sign_queries = 2;
  const InterpreterConfig cfg = interpreter_config(4, 2);
  CHECK(cfg.lambda == Rational(1, 96));
  auto inner = fdh_interpreter_reduction(p, cfg);
  const double lam = 1.0 / 96;
  CHECK(inner.claimed_beta.evaluate(1.0) == doctest::Approx(lam * (1 - lam) * (1 - lam)));
  auto both = reduction::compose(fdh_classical_reduction(p), inner);
  CHECK(both.claimed_beta.evaluate(1.0) == doctest::Approx(lam * (1 - lam) * (1 - lam) / 4));
  CHECK_THROWS(fdh_interpreter(p, InterpreterConfig{Rational(0), 0, 1}));
}

TEST_CASE("end-to-end report") {
  RoGameParams p;
  p.max_hash_queries = 2;
  p.max_sign_queries = 0;
  auto f = fdh_bruteforce_forger(stand_in(p), 2);
  const FdhReport rep = run_fdh_end_to_end(p, f, 400, 0.99, seed_of("e2e"));
  CHECK(rep.lambda == Rational(1, 8));
  CHECK(rep.internal.point == 1.0);
  CHECK(rep.satisfied);
  const std::string text = to_text(rep);
  CHECK(text.find("sc_distance_budget: ") != std::string::npos);
  CHECK(text.find("abort_estimate: ") != std::string::npos);
  CHECK(text.find("satisfied: true") != std::string::npos);
}
