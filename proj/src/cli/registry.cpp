#include "llab/cli/registry.hpp"

#include <sstream>

#include "llab/fdh/fdh.hpp"
#include "llab/fdh/fixtures.hpp"
#include "llab/fdh/reductions.hpp"
#include "llab/ots/fixtures.hpp"
#include "llab/ots/forgery.hpp"
#include "llab/ots/lamport.hpp"
#include "llab/ots/reductions.hpp"
#include "llab/ots/wots.hpp"
#include "llab/primitives/fixtures.hpp"
#include "llab/primitives/games.hpp"
#include "llab/reduction/fixtures.hpp"
#include "llab/tree/fixtures.hpp"
#include "llab/tree/reductions.hpp"
#include "llab/tree/tree.hpp"

namespace llab::cli {

using prim::StandardGameKind;

Params Params::parse(std::string_view text) {
  Params p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw UsageError("bad parameter '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    if (!p.given_.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw UsageError("parameter '" + key + "' given twice");
    }
    pos = end + 1;
  }
  return p;
}

unsigned Params::get_uint(const std::string& key, unsigned def) {
  auto it = given_.find(key);
  unsigned v = def;
  if (it != given_.end()) {
    try {
      std::size_t used = 0;
      const unsigned long parsed = std::stoul(it->second, &used);
      if (used != it->second.size() || parsed > 1'000'000'000UL) throw std::out_of_range("");
      v = static_cast<unsigned>(parsed);
    } catch (const std::logic_error&) {
      throw UsageError("parameter '" + key + "' needs an unsigned integer");
    }
  }
  effective_[key] = std::to_string(v);
  return v;
}

std::string Params::get_string(const std::string& key, const std::string& def) {
  auto it = given_.find(key);
  const std::string v = it == given_.end() ? def : it->second;
  effective_[key] = v;
  return v;
}

void Params::finish() const {
  for (const auto& [k, v] : given_) {
    if (effective_.count(k) == 0) throw UsageError("unknown parameter '" + k + "'");
  }
}

std::string Params::canonical() const {
  std::string out;
  for (const auto& [k, v] : effective_) {
    if (!out.empty()) out += ',';
    out += k + "=" + v;
  }
  return out;
}

namespace {

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ots::LamportParams lamport_params(Params& p, unsigned def_l, unsigned def_owf) {
  ots::LamportParams lp;
  lp.message_bits = p.get_uint("l", def_l);
  lp.owf = prim::weak_owf(p.get_uint("owf", def_owf));
  return lp;
}

ots::WotsParams wots_params(Params& p, unsigned def_l, unsigned def_prf) {
  ots::WotsParams wp;
  wp.w = p.get_uint("w", 4);
  wp.message_bits = p.get_uint("l", def_l);
  wp.prf = prim::weak_prf(p.get_uint("prf", def_prf));
  return wp;
}

tree::TreeParams tree_params(Params& p, tree::Variant v) {
  tree::TreeParams tp;
  tp.variant = v;
  tp.depth = p.get_uint("k", 3);
  const unsigned hash_bits = p.get_uint("hash", 8);
  tp.hash = prim::truncated_hash(hash_bits);
  const std::string o = p.get_string("ots", "lamport");
  if (o == "lamport") {
    ots::LamportParams lp;
    lp.message_bits = hash_bits;
    lp.owf = prim::weak_owf(p.get_uint("owf", 8));
    tp.ots = ots::make_lamport(lp);
  } else if (o == "wots") {
    ots::WotsParams wp;
    wp.w = p.get_uint("w", 4);
    wp.message_bits = hash_bits;
    wp.prf = prim::weak_prf(p.get_uint("prf", 8));
    tp.ots = ots::make_wots(wp);
  } else {
    throw UsageError("ots must be lamport or wots");
  }
  tp.validate();
  return tp;
}

Seed fdh_oracle_seed(Params& p) {
  const std::string hex = p.get_string("oracle", derive_seed(Seed{}, "llab-cli-fdh-oracle").hex());
  try {
    return Seed::from_hex(hex);
  } catch (const DecodeError&) {
    throw UsageError("oracle must be 64 hex digits");
  }
}

fdh::RoGameParams ro_params(Params& p, unsigned def_qh, unsigned def_qs) {
  fdh::RoGameParams rp;
  rp.modulus_bits = p.get_uint("n", 12);
  rp.max_hash_queries = p.get_uint("qh", def_qh);
  rp.max_sign_queries = p.get_uint("qs", def_qs);
  if (rp.modulus_bits < 10 || rp.modulus_bits > 62) throw UsageError("n must lie in 10..62");
  return rp;
}

std::vector<Fixture> with_abort(std::vector<Fixture> f, const std::string& iface) {
  f.push_back({"abort", prim::always_abort(iface)});
  return f;
}

// Fixtures that speak the forgery game of `s` with parameters `gp`.
std::vector<Fixture> forgery_fixtures(const ots::SchemePtr& s, const ots::ForgeryGameParams& gp) {
  std::vector<Fixture> f;
  f.push_back({"replay", ots::replay_forger(*s, gp)});
  f.push_back({"greedy", ots::greedy_forger(*s, gp)});
  if (gp.one_time) {
    if (auto l = std::dynamic_pointer_cast<const ots::Lamport>(s)) {
      f.push_back({"lamport-bruteforce", ots::lamport_bruteforce_forger(l->params())});
      f.push_back({"lamport-bruteforce-query", ots::lamport_bruteforce_forger(l->params(), true)});
    }
    if (auto w = std::dynamic_pointer_cast<const ots::Wots>(s)) {
      f.push_back({"wots-bruteforce", ots::wots_bruteforce_forger(w->params())});
      f.push_back({"wots-bruteforce-query", ots::wots_bruteforce_forger(w->params(), true)});
    }
  }
  if (auto t = std::dynamic_pointer_cast<const tree::TreeScheme>(s)) {
    if (!gp.one_time && gp.max_sign_queries >= 1) f.push_back({"tree-birthday", tree::tree_birthday_forger(t->params())});
  }
  return with_abort(std::move(f), ots::forgery_interface(*s, gp));
}

std::vector<Fixture> ro_fixtures(const fdh::RoGameParams& rp) {
  std::vector<Fixture> f;
  f.push_back({"fdh-bruteforce", fdh::fdh_bruteforce_forger(rp, rp.max_hash_queries, rp.max_sign_queries)});
  f.push_back({"fdh-probe-repeated", fdh::fdh_sc_probe_forger(rp, rp.max_hash_queries, true)});
  f.push_back({"fdh-probe-unique", fdh::fdh_sc_probe_forger(rp, rp.max_hash_queries, false)});
  return with_abort(std::move(f), fdh::ro_forgery_interface(rp));
}

ReductionSetup lift_setup(reduction::Reduction r, std::vector<Fixture> f) {
  ReductionSetup s;
  s.kind = ReductionSetup::Kind::lift;
  s.fixtures = with_abort(std::move(f), r.internal->adversary_interface());
  s.reduction = std::move(r);
  return s;
}

ReductionSetup tree_setup(Params& p, tree::Variant v, tree::TreeTarget target) {
  const tree::TreeParams tp = tree_params(p, v);
  const unsigned q = p.get_uint("q", 1);
  if (q < 1) throw UsageError("q must be at least 1");
  reduction::Reduction r = tree::tree_reduction(tp, target, q);
  auto s = make_tree(tp);
  return lift_setup(r, {{"tree-birthday", tree::tree_birthday_forger(tp)},
                        {"replay", ots::replay_forger(*s, ots::ForgeryGameParams::many(q))}});
}

}  // namespace

const std::vector<SchemeEntry>& schemes() {
  static const std::vector<SchemeEntry> list = {
      {"lamport", "Lamport OTS over a weak OWF; l (16), owf bits (12)",
       [](Params& p) -> ots::SchemePtr { return ots::make_lamport(lamport_params(p, 16, 12)); }},
      {"wots", "Winternitz OTS over a weak PRF; w (4), l (16), prf bits (8)",
       [](Params& p) -> ots::SchemePtr { return ots::make_wots(wots_params(p, 16, 8)); }},
      {"merkle", "Merkle tree; k (3), hash bits (8), ots lamport|wots, owf / w, prf (8)",
       [](Params& p) -> ots::SchemePtr { return tree::make_tree(tree_params(p, tree::Variant::merkle)); }},
      {"xmss", "XMSS-style masked tree; same parameters as merkle",
       [](Params& p) -> ots::SchemePtr { return tree::make_tree(tree_params(p, tree::Variant::xmss)); }},
      {"fdh", "full-domain hash over the RSA-style permutation; n bits (16), oracle seed (hex)",
       [](Params& p) -> ots::SchemePtr {
         const unsigned n = p.get_uint("n", 16);
         return fdh::instantiate_fdh(n, fdh_oracle_seed(p));
       }},
  };
  return list;
}

ots::SchemePtr make_scheme(const std::string& name, Params& params) {
  for (const auto& e : schemes()) {
    if (e.name != name) continue;
    auto s = guarded([&] { return e.make(params); });
    params.finish();
    return s;
  }
  throw UsageError("unknown scheme '" + name + "'");
}

const std::vector<GameEntry>& games() {
  static const std::vector<GameEntry> list = {
      {"inv", "inversion of a weak OWF; owf bits (4)",
       [](Params& p, const std::string&) {
         const auto spec = prim::weak_owf(p.get_uint("owf", 4));
         GameSetup g{prim::standard_game(StandardGameKind::inv, spec), {}};
         g.fixtures = with_abort({{"inv-bruteforce", prim::inv_bruteforce(spec)},
                                  {"inv-random", prim::inv_random_guess(spec)}},
                                 g.game->adversary_interface());
         return g;
       }},
      {"kow", "key one-wayness of a weak PRF; prf bits (4)",
       [](Params& p, const std::string&) {
         const auto spec = prim::weak_prf(p.get_uint("prf", 4));
         GameSetup g{prim::standard_game(StandardGameKind::kow, spec), {}};
         g.fixtures = with_abort({{"kow-bruteforce", prim::kow_bruteforce(spec)}}, g.game->adversary_interface());
         return g;
       }},
      {"spr", "second preimage on a truncated hash; hash bits (8), len bytes (4)",
       [](Params& p, const std::string&) {
         const auto spec = prim::truncated_hash(p.get_uint("hash", 8));
         prim::StandardGameOptions o;
         o.input_bytes = p.get_uint("len", 4);
         GameSetup g{prim::standard_game(StandardGameKind::spr, spec, o), {}};
         g.fixtures = with_abort({{"spr-replay", prim::spr_replay(spec, o)}}, g.game->adversary_interface());
         return g;
       }},
      {"col", "collision on a truncated hash; hash bits (8)",
       [](Params& p, const std::string&) {
         const auto spec = prim::truncated_hash(p.get_uint("hash", 8));
         GameSetup g{prim::standard_game(StandardGameKind::col, spec), {}};
         g.fixtures = with_abort({{"col-birthday", prim::col_birthday(spec)}}, g.game->adversary_interface());
         return g;
       }},
      {"prf", "PRF distinguishing; prf bits (4), q queries (16)",
       [](Params& p, const std::string&) {
         const auto spec = prim::weak_prf(p.get_uint("prf", 4));
         prim::StandardGameOptions o;
         o.max_queries = p.get_uint("q", 16);
         GameSetup g{prim::standard_game(StandardGameKind::prf, spec, o), {}};
         g.fixtures = with_abort({{"prf-constant-0", prim::prf_constant(spec, o, 0)},
                                  {"prf-constant-1", prim::prf_constant(spec, o, 1)},
                                  {"prf-bruteforce", prim::prf_bruteforce(spec, o)}},
                                 g.game->adversary_interface());
         return g;
       }},
      {"tdp", "inversion of the RSA-style permutation; n bits (12)",
       [](Params& p, const std::string&) {
         const unsigned n = p.get_uint("n", 12);
         GameSetup g{prim::tdp_inversion_game(n), {}};
         g.fixtures = with_abort({{"tdp-bruteforce", prim::tdp_bruteforce(n)}}, g.game->adversary_interface());
         return g;
       }},
      {"forgery", "forgery game for --scheme with its parameters; q signing queries (1, one-time for OTS)",
       [](Params& p, const std::string& scheme) {
         if (scheme.empty()) throw UsageError("the forgery game needs --scheme");
         const unsigned q = p.get_uint("q", 1);
         SchemeEntry const* entry = nullptr;
         for (const auto& e : schemes()) {
           if (e.name == scheme) entry = &e;
         }
         if (entry == nullptr) throw UsageError("unknown scheme '" + scheme + "'");
         ots::SchemePtr s = entry->make(p);
         const bool one_time = !s->stateful() && scheme != "fdh" && q == 1;
         const ots::ForgeryGameParams gp = one_time ? ots::ForgeryGameParams::one_time_params()
                                                    : ots::ForgeryGameParams::many(q);
         return GameSetup{ots::make_forgery_game(s, gp), forgery_fixtures(s, gp)};
       }},
      {"fdh-ro", "FDH forgery with the hash as a challenger oracle; n (12), qh (8), qs (0)",
       [](Params& p, const std::string&) {
         const auto rp = ro_params(p, 8, 0);
         return GameSetup{fdh::ro_forgery_game(rp), ro_fixtures(rp)};
       }},
      {"fdh-standin", "stand-in for the quantum-query FDH forgery game; n (12), qh (8), qs (0)",
       [](Params& p, const std::string&) {
         auto rp = ro_params(p, 8, 0);
         rp.flavor = fdh::RoGameParams::Flavor::quantum_stand_in;
         return GameSetup{fdh::ro_forgery_game(rp), ro_fixtures(rp)};
       }},
  };
  return list;
}

GameSetup make_game(const std::string& name, Params& params, const std::string& scheme) {
  for (const auto& e : games()) {
    if (e.name != name) continue;
    GameSetup g = guarded([&] { return e.make(params, scheme); });
    params.finish();
    return g;
  }
  throw UsageError("unknown game '" + name + "'");
}

const std::vector<ReductionEntry>& reductions() {
  static const std::vector<ReductionEntry> list = {
      {"lamport-inv", "Lamport forgery -> OWF inversion, beta = x/(2l); l (16), owf (12)",
       [](Params& p) {
         const auto lp = lamport_params(p, 16, 12);
         ReductionSetup s = lift_setup(ots::lamport_reduction(lp),
                                       {{"lamport-bruteforce", ots::lamport_bruteforce_forger(lp)},
                                        {"lamport-bruteforce-query", ots::lamport_bruteforce_forger(lp, true)}});
         s.twins["lamport-bruteforce"] = ots::lamport_bruteforce_forger_twin(lp);
         return s;
       }},
      {"wots-kow", "W-OTS forgery -> PRF key one-wayness, claimed beta = x; w (4), l (16), prf (8)",
       [](Params& p) {
         const auto wp = wots_params(p, 16, 8);
         return lift_setup(ots::wots_kow_reduction(wp), {{"wots-bruteforce", ots::wots_bruteforce_forger(wp)},
                                                         {"wots-bruteforce-query", ots::wots_bruteforce_forger(wp, true)}});
       }},
      {"tree-col", "Merkle forgery -> hash collision; k (3), hash (8), ots, owf, q (1)",
       [](Params& p) { return tree_setup(p, tree::Variant::merkle, tree::TreeTarget::collision_or_spr); }},
      {"tree-spr", "XMSS-tree forgery -> second preimage; k (3), hash (8), ots, owf, q (1)",
       [](Params& p) { return tree_setup(p, tree::Variant::xmss, tree::TreeTarget::collision_or_spr); }},
      {"tree-ots", "tree forgery -> OTS forgery; variant merkle|xmss, k (3), hash (8), ots, owf, q (1)",
       [](Params& p) {
         const std::string v = p.get_string("variant", "merkle");
         if (v != "merkle" && v != "xmss") throw UsageError("variant must be merkle or xmss");
         return tree_setup(p, v == "merkle" ? tree::Variant::merkle : tree::Variant::xmss,
                           tree::TreeTarget::ots_forgery);
       }},
      {"fdh-classical", "FDH forgery in the RO game -> permutation inversion, beta = x/qh; n (12), qh (8), qs (0)",
       [](Params& p) {
         const auto rp = ro_params(p, 8, 0);
         ReductionSetup s;
         s.kind = ReductionSetup::Kind::lift;
         s.reduction = fdh::fdh_classical_reduction(rp);
         s.fixtures = ro_fixtures(rp);
         return s;
       }},
      {"fdh-interpreter",
       "stand-in forgery -> RO forgery -> inversion with lambda from qh, qs; n (12), qh (8), qs (0)",
       [](Params& p) {
         auto rp = ro_params(p, 8, 0);
         ReductionSetup s;
         s.kind = ReductionSetup::Kind::fdh_end_to_end;
         s.reduction = fdh::fdh_interpreter_reduction(rp, fdh::interpreter_config(rp.max_hash_queries,
                                                                                  rp.max_sign_queries));
         rp.flavor = fdh::RoGameParams::Flavor::quantum_stand_in;
         s.fixtures = ro_fixtures(rp);
         return s;
       }},
      {"compose-rompel-demo", "abstract three-step UOWHF-from-OWF chain, composed beta; l (16)",
       [](Params& p) {
         const unsigned l = p.get_uint("l", 16);
         if (l < 1) throw UsageError("l must be at least 1");
         ReductionSetup s;
         s.kind = ReductionSetup::Kind::abstract_chain;
         s.chain = reduction::rompel_chain(l);
         s.reduction = reduction::rompel_composed(l);
         return s;
       }},
  };
  return list;
}

ReductionSetup make_reduction_setup(const std::string& name, Params& params) {
  for (const auto& e : reductions()) {
    if (e.name != name) continue;
    ReductionSetup s = guarded([&] { return e.make(params); });
    params.finish();
    return s;
  }
  throw UsageError("unknown reduction '" + name + "'");
}

const Fixture& find_fixture(const std::vector<Fixture>& fixtures, const std::string& name) {
  for (const auto& f : fixtures) {
    if (f.name == name) return f;
  }
  std::string avail;
  for (const auto& f : fixtures) avail += (avail.empty() ? "" : ", ") + f.name;
  throw UsageError("unknown fixture '" + name + "'; available: " + avail);
}

std::string list_text() {
  std::ostringstream o;
  o << "schemes:\n";
  for (const auto& e : schemes()) o << "  " << e.name << ": " << e.summary << "\n";
  o << "games:\n";
  for (const auto& e : games()) o << "  " << e.name << ": " << e.summary << "\n";
  o << "fixtures (by game, default parameters):\n";
  for (const auto& e : games()) {
    Params p;
    const std::string scheme = e.name == "forgery" ? "lamport" : "";
    GameSetup g = e.make(p, scheme);
    o << "  " << e.name << (scheme.empty() ? "" : " --scheme lamport") << ":";
    for (const auto& f : g.fixtures) o << " " << f.name;
    o << "\n";
  }
  o << "  forgery --scheme merkle --params q=N: replay greedy tree-birthday abort\n";
  o << "reductions:\n";
  for (const auto& e : reductions()) {
    Params p;
    ReductionSetup s = e.make(p);
    o << "  " << e.name << ": " << e.summary << "\n";
    if (!s.fixtures.empty()) {
      o << "    fixtures:";
      for (const auto& f : s.fixtures) o << " " << f.name;
      o << "\n";
    }
  }
  return o.str();
}

}  // namespace llab::cli
