#include <doctest.h>

#include <set>

#include "llab/ots/fixtures.hpp"
#include "llab/ots/reductions.hpp"
#include "llab/primitives/fixtures.hpp"
#include "support/auditor.hpp"
#include "support/ref_family.hpp"

using namespace llab;
using namespace llab::ots;
using namespace llab::reduction;
using game::AdversaryHandle;
using testsupport::ref_eval;

namespace {

Seed seed_of(std::string_view tag, std::uint64_t i = 0) { return derive_seed(Seed{}, tag, i); }

Bytes msg(std::uint64_t v, const SignatureScheme& s) { return prim::from_u64(v, s.message_bytes()); }

LamportParams lamport(unsigned l, unsigned owf_bits) { return {l, prim::weak_owf(owf_bits)}; }
WotsParams wots(unsigned w, unsigned l, unsigned prf_bits) { return {w, l, prim::weak_prf(prf_bits)}; }

// Reference chain built on the independent evaluator.
std::uint64_t ref_chain(const prim::FunctionFamilySpec& prf, std::uint64_t start, const Bytes& x, unsigned steps) {
  std::uint64_t v = start;
  for (unsigned i = 0; i < steps; ++i) v = ref_eval(prf, prim::from_u64(v, prf.key_bytes()), x);
  return v;
}

void check_exhaustive_correctness(const SignatureScheme& s, const Seed& seed) {
  DrbgTape tape(seed);
  KeyPair kp = s.keygen(tape);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.message_bits()); ++m) {
    REQUIRE(s.verify(kp.pk, msg(m, s), s.sign_once(kp.sk, msg(m, s))));
  }
}

}  // namespace

TEST_CASE("Lamport with one message bit signs by revealing sk[0,0]") {
  Lamport s(lamport(1, 4));
  DrbgTape tape(seed_of("l1"));
  KeyPair kp = s.keygen(tape);
  Bytes sig = s.sign_once(kp.sk, Bytes{0});
  CHECK(s.decode_sig(sig).at(0) == s.decode_sk(kp.sk).at(Lamport::slot(0, 0)));
  CHECK(s.verify(kp.pk, Bytes{0}, sig));
  CHECK_FALSE(s.valid_message(Bytes{2}));
  CHECK_THROWS_AS(s.sign_once(kp.sk, Bytes{2}), std::invalid_argument);
}

TEST_CASE("Lamport keys follow the slot layout and the independent evaluator") {
  Lamport s(lamport(4, 4));
  DrbgTape tape(seed_of("layout"));
  KeyPair kp = s.keygen(tape);
  auto sk = s.decode_sk(kp.sk);
  auto pk = s.decode_pk(kp.pk);
  REQUIRE(sk.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(prim::to_u64(pk[i]) == ref_eval(s.params().owf, {}, sk[i]));
  // Message bit i is counted from the most significant end: 0b1000 reveals sk[0,1].
  auto sig = s.decode_sig(s.sign_once(kp.sk, Bytes{0x8}));
  CHECK(sig[0] == sk[Lamport::slot(0, 1)]);
  CHECK(sig[3] == sk[Lamport::slot(3, 0)]);
}

TEST_CASE("Lamport: one corrupted element is rejected unless it collides under f") {
  Lamport s(lamport(4, 4));
  const auto& owf = s.params().owf;
  DrbgTape tape(seed_of("flip"));
  KeyPair kp = s.keygen(tape);
  const Bytes m{0x5};
  auto sig = s.decode_sig(s.sign_once(kp.sk, m));
  for (unsigned i = 0; i < 4; ++i) {
    for (std::uint64_t v = 0; v < 16; ++v) {
      if (Bytes{static_cast<std::uint8_t>(v)} == sig[i]) continue;
      auto bad = sig;
      bad[i] = Bytes{static_cast<std::uint8_t>(v)};
      const bool collides = ref_eval(owf, {}, bad[i]) == ref_eval(owf, {}, sig[i]);
      CHECK(s.verify(kp.pk, m, s.encode_sig(bad)) == collides);
    }
  }
}

TEST_CASE("Lamport: a signature on m' verifies on m only through collisions") {
  Lamport s(lamport(4, 4));
  const auto& owf = s.params().owf;
  DrbgTape tape(seed_of("cross"));
  KeyPair kp = s.keygen(tape);
  auto sk = s.decode_sk(kp.sk);
  for (std::uint64_t m = 0; m < 16; ++m) {
    for (std::uint64_t m2 = 0; m2 < 16; ++m2) {
      if (m == m2) continue;
      bool expected = true;
      for (unsigned i = 0; i < 4; ++i) {
        const unsigned a = (m >> (3 - i)) & 1, b = (m2 >> (3 - i)) & 1;
        if (a != b) expected &= ref_eval(owf, {}, sk[Lamport::slot(i, a)]) == ref_eval(owf, {}, sk[Lamport::slot(i, b)]);
      }
      CHECK(s.verify(kp.pk, msg(m, s), s.sign_once(kp.sk, msg(m2, s))) == expected);
    }
  }
}

TEST_CASE("verify never throws on malformed input") {
  Lamport l(lamport(4, 4));
  Wots w(wots(4, 8, 8));
  DrbgTape tape(seed_of("malformed"));
  KeyPair a = l.keygen(tape), b = w.keygen(tape);
  for (const Bytes& junk : {Bytes{}, Bytes{1}, Bytes{1, 2, 3, 4, 5, 6, 7, 8, 9}, a.pk, b.pk}) {
    CHECK_FALSE(l.verify(a.pk, Bytes{1}, junk));
    CHECK_FALSE(w.verify(b.pk, Bytes{1}, junk));
    if (junk != a.pk) CHECK_FALSE(l.verify(junk, Bytes{1}, l.sign_once(a.sk, Bytes{1})));
    if (junk != b.pk) CHECK_FALSE(w.verify(junk, Bytes{1}, w.sign_once(b.sk, Bytes{1})));
  }
  CHECK_FALSE(l.verify(a.pk, Bytes{1, 0}, l.sign_once(a.sk, Bytes{1})));
}

TEST_CASE("W-OTS parameters") {
  WotsParams p = wots(4, 16, 8);
  CHECK(p.l1() == 8);
  CHECK(p.l2() == 3);  // checksum up to 24 needs three base-4 digits
  WotsParams q = wots(2, 4, 4);
  CHECK(q.l1() == 4);
  CHECK(q.l2() == 3);
  WotsParams r = wots(16, 256, 24);
  CHECK(r.l1() == 64);
  CHECK(r.l2() == 3);
  CHECK_THROWS_AS(Wots(wots(3, 8, 8)), std::invalid_argument);
  CHECK_THROWS_AS(Wots({4, 8, prim::weak_owf(8)}), std::invalid_argument);
}

TEST_CASE("W-OTS with w = 2 is correct on every 4-bit message") {
  check_exhaustive_correctness(Wots(wots(2, 4, 4)), seed_of("w2"));
}

TEST_CASE("W-OTS w = 4, l = 8: signature length and chain ends match keygen") {
  Wots s(wots(4, 8, 8));
  const auto& prf = s.params().prf;
  DrbgTape tape(seed_of("w4"));
  KeyPair kp = s.keygen(tape);
  auto sk = s.decode_sk(kp.sk);
  auto pk = s.decode_pk(kp.pk);
  REQUIRE(pk.chains.size() == s.params().chain_count());
  for (std::size_t j = 0; j < sk.chains.size(); ++j) {
    CHECK(prim::to_u64(pk.chains[j]) == ref_chain(prf, prim::to_u64(sk.chains[j]), sk.x, 3));
  }
  for (std::uint64_t m = 0; m < 256; ++m) {
    Bytes sig = s.sign_once(kp.sk, msg(m, s));
    auto values = s.decode_sig(sig);
    CHECK(values.size() == s.params().chain_count());
    auto d = s.digits(msg(m, s));
    for (std::size_t j = 0; j < values.size(); ++j) {
      CHECK(ref_chain(prf, prim::to_u64(values[j]), sk.x, 3 - d[j]) == prim::to_u64(pk.chains[j]));
    }
    CHECK(s.verify(kp.pk, msg(m, s), sig));
  }
}

TEST_CASE("W-OTS all-max message digits give all-min checksum digits") {
  Wots s(wots(4, 8, 8));
  auto d = s.digits(Bytes{0xff});
  // l1 = 4 and the checksum is at most 12, so two base-4 checksum digits.
  REQUIRE(d.size() == 6);
  for (unsigned j = 0; j < 4; ++j) CHECK(d[j] == 3);
  for (unsigned j = 4; j < 6; ++j) CHECK(d[j] == 0);
  DrbgTape tape(seed_of("max"));
  KeyPair kp = s.keygen(tape);
  CHECK(s.verify(kp.pk, Bytes{0xff}, s.sign_once(kp.sk, Bytes{0xff})));
  // 0x1b = 00 01 10 11, checksum 3+2+1+0 = 6 = 1,2 in base 4.
  CHECK(s.digits(Bytes{0x1b}) == std::vector<unsigned>{0, 1, 2, 3, 1, 2});
}

TEST_CASE("W-OTS checksum forces some chain backwards for every pair of 8-bit messages") {
  for (unsigned w : {2u, 4u, 16u}) {
    Wots s(wots(w, 8, 8));
    std::vector<std::vector<unsigned>> all;
    for (std::uint64_t m = 0; m < 256; ++m) all.push_back(s.digits(msg(m, s)));
    for (std::size_t a = 0; a < 256; ++a) {
      for (std::size_t b = 0; b < 256; ++b) {
        if (a == b) continue;
        bool backwards = false;
        for (std::size_t j = 0; j < all[a].size() && !backwards; ++j) backwards = all[b][j] < all[a][j];
        REQUIRE(backwards);
      }
    }
  }
}

TEST_CASE("scheme correctness: exhaustive up to 12 bits, sampled above") {
  check_exhaustive_correctness(Lamport(lamport(12, 8)), seed_of("lam12"));
  check_exhaustive_correctness(Wots(wots(4, 12, 8)), seed_of("wots12"));
  check_exhaustive_correctness(Wots(wots(16, 12, 8)), seed_of("wots12-16"));
  Lamport big(lamport(16, 12));
  Wots wbig(wots(4, 16, 8));
  DrbgTape tape(seed_of("sampled"));
  KeyPair a = big.keygen(tape), b = wbig.keygen(tape);
  for (int i = 0; i < 1000; ++i) {
    Bytes m = prim::sample_bits(tape, 16);
    REQUIRE(big.verify(a.pk, m, big.sign_once(a.sk, m)));
    REQUIRE(wbig.verify(b.pk, m, wbig.sign_once(b.sk, m)));
  }
}

TEST_CASE("forgery game: replay fails, brute force wins, overquerying is flagged") {
  auto s = make_lamport(lamport(2, 4));
  auto gp = ForgeryGameParams::one_time_params();
  auto g = make_forgery_game(s, gp);
  CHECK(game::exact_value(*g, replay_forger(*s, gp), 20) == 0);
  CHECK(game::exact_value(*g, lamport_bruteforce_forger(s->params()), 20) == 1);
  CHECK(game::exact_value(*g, lamport_bruteforce_forger(s->params(), true), 20) == 1);
  auto r = game::run_game(*g, greedy_forger(*s, gp), seed_of("greedy"));
  CHECK(r.outcome.flag == game::RunFlag::query_budget_exceeded);
  // The challenger answered exactly one query.
  std::size_t answers = 0;
  for (const auto& m : r.transcript.messages) answers += m.sender == game::Role::challenger && m.payload[0] == 'G';
  CHECK(answers == 1);
  CHECK_THROWS_AS(make_forgery_game(s, {true, 2}), std::invalid_argument);
  auto multi = make_forgery_game(s, ForgeryGameParams::many(3));
  CHECK(game::run_game(*multi, greedy_forger(*s, ForgeryGameParams::many(3)), seed_of("g3")).outcome.flag ==
        game::RunFlag::query_budget_exceeded);
}

TEST_CASE("Lamport reduction: always-abort maps to 0, a fixed forger to its planted-slot hit rate") {
  LamportParams p = lamport(4, 2);
  Reduction r = lamport_reduction(p);
  CHECK(r.claimed_beta.describe() == "x/8");
  CHECK(game::exact_value(*r.external, apply_transformer(r, prim::always_abort(r.internal->adversary_interface())),
                          24) == 0);
  // The forger always signs 0000, so it opens the slots (i, 0). Count them over all 2l choices.
  auto forger = lamport_bruteforce_forger(p);
  std::size_t hits = 0;
  for (unsigned i = 0; i < p.message_bits; ++i) {
    for (unsigned b = 0; b < 2; ++b) hits += (b == 0);
  }
  const Rational expected(BigInt(hits), BigInt(2 * p.message_bits));
  CHECK(game::exact_value(*r.external, apply_transformer(r, forger), 24) == expected);
}

TEST_CASE("Lamport reduction with a perfect forger plays the inversion game to completion") {
  LamportParams p = lamport(16, 12);
  Reduction r = lamport_reduction(p);
  auto inverter = apply_transformer(r, lamport_bruteforce_forger(p));
  std::size_t wins = 0;
  for (int i = 0; i < 200; ++i) {
    auto res = game::run_game(*r.external, inverter, seed_of("inv", i));
    CHECK(res.transcript.well_formed());
    if (res.outcome.flag == game::RunFlag::none) {
      CHECK(res.transcript.messages.size() == 2);
      CHECK(res.outcome.succ() == testsupport::audit_standard(prim::StandardGameKind::inv, p.owf, res.transcript));
    } else {
      CHECK(res.outcome.flag == game::RunFlag::adversary_abort);
    }
    wins += res.outcome.succ();
  }
  CHECK(wins > 0);
}

TEST_CASE("OTS transformers are straight-line over 100 seeds") {
  auto seeds = seed_range(seed_of("sl"), 100);
  LamportParams lp = lamport(8, 8);
  Reduction lr = lamport_reduction(lp);
  for (const auto& a : {lamport_bruteforce_forger(lp), lamport_bruteforce_forger(lp, true),
                        replay_forger(*make_lamport(lp), ForgeryGameParams::one_time_params())}) {
    auto rep = check_straight_line(lr, a, seeds);
    CHECK_MESSAGE(rep.status == CheckStatus::pass, a->name() << ": " << rep.diagnostic);
  }
  WotsParams wp = wots(4, 8, 8);
  Reduction wr = wots_kow_reduction(wp);
  for (const auto& a : {wots_bruteforce_forger(wp), wots_bruteforce_forger(wp, true)}) {
    auto rep = check_straight_line(wr, a, seeds);
    CHECK_MESSAGE(rep.status == CheckStatus::pass, a->name() << ": " << rep.diagnostic);
  }
}

TEST_CASE("behavioral dominance of the Lamport reduction on I/O-equal forgers") {
  LamportParams p = lamport(2, 4);
  auto a1 = lamport_bruteforce_forger(p);
  auto a2 = lamport_bruteforce_forger_twin(p);
  // Certify I/O equality on every public key over the 4-bit scale.
  auto s = make_lamport(p);
  for (std::uint64_t v = 0; v < (1u << 16); ++v) {
    std::vector<Bytes> images;
    for (int k = 0; k < 4; ++k) images.push_back(Bytes{static_cast<std::uint8_t>((v >> (4 * k)) & 0xf)});
    Bytes in = concat(Bytes{'K'}, s->encode_pk(images));
    DrbgTape t1(seed_of("io1")), t2(seed_of("io2"));
    auto r1 = a1->spawn(t1)->respond(in);
    auto r2 = a2->spawn(t2)->respond(in);
    REQUIRE(r1.index() == r2.index());
    if (r1.index() == 0) REQUIRE(std::get<Bytes>(r1) == std::get<Bytes>(r2));
  }
  auto rep = check_behavioral_dominance(lamport_reduction(p), a1, a2, seed_range(seed_of("dom"), 100));
  CHECK(rep.status == CheckStatus::pass);
  CHECK(rep.pairs_compared == 100);
}

TEST_CASE("Lamport reduction effectiveness at l = 16") {
  LamportParams p = lamport(16, 12);
  Reduction r = lamport_reduction(p);
  auto zero = check_effectiveness(r, prim::always_abort(r.internal->adversary_interface()), 200, 0.99, seed_of("e0"));
  CHECK(zero.internal_estimate.point == 0);
  CHECK(zero.claimed_lower_bound == 0);
  CHECK(zero.satisfied);
  auto e = check_effectiveness(r, lamport_bruteforce_forger(p), 2000, 0.99, seed_of("e1"));
  CHECK(e.internal_estimate.point >= 0.99);
  CHECK(e.external_estimate.point >= e.internal_estimate.point / 32 - e.internal_estimate.half_width -
                                         e.external_estimate.half_width);
  CHECK(e.satisfied);
}

TEST_CASE("W-OTS KOW reduction: extracted keys always verify") {
  WotsParams p = wots(2, 4, 8);
  Reduction r = wots_kow_reduction(p);
  auto adv = apply_transformer(r, wots_bruteforce_forger(p));
  std::size_t answered = 0;
  for (int i = 0; i < 300; ++i) {
    auto res = game::run_game(*r.external, adv, seed_of("kow", i));
    if (res.outcome.flag == game::RunFlag::adversary_abort) continue;
    ++answered;
    CHECK(testsupport::audit_standard(prim::StandardGameKind::kow, p.prf, res.transcript));
    CHECK(res.outcome.succ());
  }
  CHECK(answered > 0);
  Reduction tiny = wots_kow_reduction(wots(2, 1, 2));
  CHECK(game::exact_value(*tiny.external,
                          apply_transformer(tiny, prim::always_abort(tiny.internal->adversary_interface())), 24) == 0);
  auto replay = apply_transformer(r, replay_forger(*make_wots(p), ForgeryGameParams::one_time_params()));
  for (int i = 0; i < 50; ++i) CHECK_FALSE(game::run_game(*r.external, replay, seed_of("rp", i)).outcome.succ());
}

TEST_CASE("W-OTS KOW reduction: the measured relation is the chain-guess rate, not the claimed beta") {
  // With w = 2 every chain of a valid forgery with digit 0 yields the key, so the
  // external value is the fraction of chains where the all-zero message has digit 0.
  WotsParams p = wots(2, 4, 8);
  Reduction r = wots_kow_reduction(p);
  CHECK(r.claimed_beta == BetaSpec::scalar(1));
  auto d = make_wots(p)->digits(Bytes{0});
  std::size_t zeros = 0;
  for (unsigned v : d) zeros += v == 0;
  const double rate = static_cast<double>(zeros) / static_cast<double>(d.size());
  auto e = check_effectiveness(r, wots_bruteforce_forger(p), 2000, 0.99, seed_of("weff"));
  CHECK(e.internal_estimate.point == 1.0);
  CHECK(std::abs(e.external_estimate.point - rate) <= e.external_estimate.half_width);
  CHECK_FALSE(e.satisfied);
  CHECK(e.notes.find("position-guess") != std::string::npos);
}
