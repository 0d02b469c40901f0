#include "llab/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <sstream>

#include "llab/cli/files.hpp"
#include "llab/cli/registry.hpp"
#include "llab/fdh/reductions.hpp"
#include "llab/primitives/family.hpp"
#include "llab/sha256.hpp"
#include "llab/tree/tree.hpp"

namespace llab::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string params;
  std::string seed;
  std::string report;
};

Seed parse_seed(const std::string& hex) {
  if (hex.empty()) throw UsageError("--seed is required");
  try {
    return Seed::from_hex(hex);
  } catch (const DecodeError&) {
    throw UsageError("--seed must be 64 hex digits");
  }
}

Bytes parse_message(const std::string& hex) {
  try {
    return from_hex(hex);
  } catch (const DecodeError&) {
    throw UsageError("--message must be hex");
  }
}

std::string echo(int argc, const char* const* argv) {
  std::string s = "llab";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

void emit(std::ostream& out, const std::string& report_path, const std::string& text) {
  out << text;
  if (!report_path.empty()) write_file_atomic(report_path, to_bytes(text));
}

// ---- sig ---------------------------------------------------------------------

struct Loaded {
  KeyFile file;
  ots::SchemePtr scheme;
};

Loaded load_key(const fs::path& path, const std::string& role) {
  Loaded l;
  l.file = decode_keyfile(read_file(path));
  if (l.file.role != role) throw IntegrityError(path.string() + " holds a " + l.file.role + ", expected " + role);
  Params p = Params::parse(l.file.params);
  try {
    l.scheme = make_scheme(l.file.scheme, p);
  } catch (const UsageError& e) {
    throw IntegrityError(std::string("key file parameters do not build a scheme: ") + e.what());
  }
  if (l.scheme->id() != l.file.scheme_id) throw IntegrityError("key file scheme id does not match its parameters");
  return l;
}

KeyFile wrap(const std::string& name, const std::string& params, const ots::SignatureScheme& s, std::string role,
             Bytes material) {
  return {name, params, s.id(), std::move(role), std::move(material)};
}

// Binds a state file to one tree: the stored seed is the SHA-256 of the encoded public key.
Seed state_binding(const tree::TreeScheme& t, ByteView sk) {
  const Digest d = sha256(t.encode_pk(t.decode_sk(sk)));
  return Seed::from_bytes(d);
}

struct SigArgs {
  std::string scheme, params, seed, out, key, message, sig, state;
  std::string fail_at;
};

int sig_keygen(const SigArgs& a, std::ostream& out) {
  if (a.scheme.empty() || a.out.empty()) throw UsageError("keygen needs --scheme and --out");
  Params p = Params::parse(a.params);
  ots::SchemePtr s = make_scheme(a.scheme, p);
  DrbgTape tape(derive_seed(parse_seed(a.seed), "keygen"));
  const ots::KeyPair kp = s->keygen(tape);
  const std::string canon = p.canonical();
  const fs::path pk = a.out + ".pk", sk = a.out + ".sk";
  write_file_atomic(sk, encode_keyfile(wrap(a.scheme, canon, *s, "secret-key", kp.sk)));
  write_file_atomic(pk, encode_keyfile(wrap(a.scheme, canon, *s, "public-key", kp.pk)));
  out << "scheme: " << s->id() << "\n";
  out << "public_key: " << pk.string() << "\n";
  out << "secret_key: " << sk.string() << "\n";
  if (s->stateful()) {
    auto t = std::dynamic_pointer_cast<const tree::TreeScheme>(s);
    const fs::path st = a.out + ".state";
    write_file_atomic(st, tree::encode_state({0, state_binding(*t, kp.sk)}));
    out << "state: " << st.string() << "\n";
    out << "capacity: " << s->capacity() << "\n";
  }
  return kOk;
}

int sig_sign(const SigArgs& a, std::ostream& out, std::ostream& err) {
  if (a.key.empty() || a.out.empty()) throw UsageError("sign needs --key, --message and --out");
  const Loaded k = load_key(a.key, "secret-key");
  const Bytes m = parse_message(a.message);
  if (!k.scheme->valid_message(m)) throw UsageError("message does not fit " + k.scheme->id());
  ots::SignerState st;
  if (k.scheme->stateful()) {
    if (a.state.empty()) throw UsageError(k.scheme->id() + " is stateful; pass --state");
    auto t = std::dynamic_pointer_cast<const tree::TreeScheme>(k.scheme);
    tree::StateRecord rec;
    try {
      rec = tree::decode_state(read_file(a.state));
    } catch (const tree::IntegrityError& e) {
      throw IntegrityError(e.what());
    }
    if (rec.tree_seed != state_binding(*t, k.file.material)) throw IntegrityError("state file belongs to another key");
    st.next_leaf = rec.next_leaf;
    if (st.next_leaf >= k.scheme->capacity()) {
      err << "llab: signer state exhausted: all " << k.scheme->capacity() << " leaves are used\n";
      return kFailure;
    }
    const Bytes sig = k.scheme->sign(k.file.material, m, st);
    if (a.fail_at == "before-state") return kFailure;
    // The advanced state is durable before the signature leaves the process.
    write_file_atomic(a.state, tree::encode_state({st.next_leaf, rec.tree_seed}));
    if (a.fail_at == "after-state") return kFailure;
    write_file_atomic(a.out, encode_keyfile(wrap(k.file.scheme, k.file.params, *k.scheme, "signature", sig)));
    out << "leaf: " << rec.next_leaf << "\n";
  } else {
    const Bytes sig = k.scheme->sign(k.file.material, m, st);
    write_file_atomic(a.out, encode_keyfile(wrap(k.file.scheme, k.file.params, *k.scheme, "signature", sig)));
  }
  out << "signature: " << a.out << "\n";
  return kOk;
}

int sig_verify(const SigArgs& a, std::ostream& out) {
  if (a.key.empty() || a.sig.empty()) throw UsageError("verify needs --key, --message and --sig");
  const Loaded k = load_key(a.key, "public-key");
  const KeyFile sig = decode_keyfile(read_file(a.sig));
  if (sig.role != "signature") throw IntegrityError(a.sig + " holds a " + sig.role + ", expected signature");
  const Bytes m = parse_message(a.message);
  const bool ok = sig.scheme_id == k.file.scheme_id && k.scheme->verify(k.file.material, m, sig.material);
  out << (ok ? "ACCEPT" : "REJECT") << "\n";
  return ok ? kOk : kRejected;
}

// ---- game / reduction ------------------------------------------------------

struct RunArgs {
  std::string name, scheme, params, adversary, seed, report;
  std::uint64_t trials = 2000;
  double confidence = 0.99;
  unsigned exact_budget = 20;
  std::size_t seeds = 100;
};

std::string header(const std::string& command, const RunArgs& a, const std::string& canon) {
  std::ostringstream o;
  o << "command: " << command << "\n";
  o << "params: " << canon << "\n";
  o << "adversary: " << a.adversary << "\n";
  o << "trials: " << a.trials << "\n";
  o << "confidence: " << a.confidence << "\n";
  o << "seed: " << a.seed << "\n";
  return o.str();
}

int cmd_game(const RunArgs& a, const std::string& command, std::ostream& out) {
  if (a.name.empty() || a.adversary.empty()) throw UsageError("game needs --game and --adversary");
  const Seed seed = parse_seed(a.seed);
  Params p = Params::parse(a.params);
  GameSetup g = make_game(a.name, p, a.scheme);
  const Fixture& f = find_fixture(g.fixtures, a.adversary);
  std::ostringstream o;
  o << header(command, a, p.canonical());
  o << "game: " << g.game->id() << "\n";
  const auto est = game::estimate_value(*g.game, f.adversary, a.trials, a.confidence, seed);
  std::istringstream lines(reduction::to_text(est));
  for (std::string line; std::getline(lines, line);) o << "estimate." << line << "\n";
  const double bits = g.game->randomness_bits() + f.adversary->randomness_bits();
  if (bits <= a.exact_budget && a.exact_budget <= 24) {
    try {
      const Rational v = game::exact_value(*g.game, f.adversary, a.exact_budget);
      o << "exact: " << rational_string(v) << "\n";
    } catch (const BudgetExceeded& e) {
      o << "exact: skipped (" << e.what() << ")\n";
    }
  } else {
    o << "exact: skipped (randomness " << bits << " bits over the budget " << a.exact_budget << ")\n";
  }
  emit(out, a.report, o.str());
  return kOk;
}

int cmd_reduction(const RunArgs& a, const std::string& command, std::ostream& out) {
  if (a.name.empty()) throw UsageError("reduction needs --reduction");
  const Seed seed = parse_seed(a.seed);
  Params p = Params::parse(a.params);
  ReductionSetup s = make_reduction_setup(a.name, p);
  std::ostringstream o;
  o << header(command, a, p.canonical());
  o << "reduction: " << s.reduction.id << "\n";
  o << "claimed_beta: " << s.reduction.claimed_beta.describe() << "\n";
  o << "claimed_coefficient: " << rational_string(s.reduction.claimed_beta.coefficient()) << "\n";
  if (!s.reduction.notes.empty()) o << "notes: " << s.reduction.notes << "\n";
  int rc = kOk;

  switch (s.kind) {
    case ReductionSetup::Kind::abstract_chain: {
      for (std::size_t i = 0; i < s.chain.size(); ++i) {
        o << "chain[" << i << "]: " << s.chain[i].id << " beta=" << s.chain[i].claimed_beta.describe() << "\n";
      }
      o << "composed_beta: " << s.reduction.claimed_beta.describe() << "\n";
      break;
    }
    case ReductionSetup::Kind::lift: {
      if (a.adversary.empty()) throw UsageError("reduction " + a.name + " needs --adversary");
      const Fixture& f = find_fixture(s.fixtures, a.adversary);
      std::vector<std::pair<game::AdversaryHandle, game::AdversaryHandle>> pairs;
      if (auto it = s.twins.find(f.name); it != s.twins.end()) {
        pairs.push_back({f.adversary, it->second});
        o << "dominance_pair: " << f.name << " / twin\n";
      } else {
        // No I/O-equal twin is registered, so dominance is only checked against the fixture itself.
        pairs.push_back({f.adversary, f.adversary});
        o << "dominance_pair: " << f.name << " / self\n";
      }
      reduction::LiftConfig cfg;
      cfg.trials = a.trials;
      cfg.confidence = a.confidence;
      cfg.seed = derive_seed(seed, "effectiveness");
      const auto v = reduction::lift_check(s.reduction, {f.adversary}, pairs,
                                           reduction::seed_range(derive_seed(seed, "straight-line"), a.seeds), cfg);
      o << reduction::to_text(v);
      rc = v.status == reduction::CheckStatus::pass ? kOk : kRejected;
      break;
    }
    case ReductionSetup::Kind::fdh_end_to_end: {
      if (a.adversary.empty()) throw UsageError("reduction " + a.name + " needs --adversary");
      const Fixture& f = find_fixture(s.fixtures, a.adversary);
      fdh::RoGameParams rp;
      rp.modulus_bits = p.get_uint("n", 12);
      rp.max_hash_queries = p.get_uint("qh", 8);
      rp.max_sign_queries = p.get_uint("qs", 0);
      const auto rep = fdh::run_fdh_end_to_end(rp, f.adversary, a.trials, a.confidence, seed);
      o << fdh::to_text(rep);
      rc = rep.satisfied ? kOk : kRejected;
      break;
    }
  }
  emit(out, a.report, o.str());
  return rc;
}

// ---- vectors -----------------------------------------------------------------

std::string vector_file(const prim::FunctionFamilySpec& spec) {
  std::ostringstream o;
  o << "# " << spec.evaluator_id << " key||input output\n";
  DrbgTape tape(derive_seed(Seed{}, "vectors:" + spec.evaluator_id));
  const std::size_t n = spec.fixed_input() && spec.input_bits <= 6 ? (std::size_t{1} << spec.input_bits) : 64;
  for (std::size_t i = 0; i < n; ++i) {
    Bytes key = spec.keyed() ? prim::sample_key(spec, tape) : Bytes{};
    Bytes x;
    if (spec.fixed_input()) {
      x = spec.input_bits <= 6 ? prim::from_u64(i, spec.input_bytes()) : prim::sample_input(spec, tape);
    } else {
      x = tape.bytes(i + 1);
    }
    o << to_hex(concat(key, x)) << " " << to_hex(prim::eval(spec, key, x)) << "\n";
  }
  return o.str();
}

int cmd_vectors(const std::string& dir, std::ostream& out) {
  if (dir.empty()) throw UsageError("vectors needs --out");
  fs::create_directories(dir);
  for (const auto& spec : {prim::weak_owf(4), prim::weak_owf(12), prim::weak_prf(4), prim::truncated_hash(8),
                           prim::full_hash()}) {
    const fs::path p = fs::path(dir) / (spec.evaluator_id + ".txt");
    write_file_atomic(p, to_bytes(vector_file(spec)));
    out << p.string() << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Game and reduction harness for hash-based and full-domain-hash signatures", "llab"};
  app.require_subcommand(1);
  const std::string command = echo(argc, argv);

  SigArgs sa;
  auto* sig = app.add_subcommand("sig", "keygen, sign and verify for every scheme");
  sig->require_subcommand(1);
  auto* keygen = sig->add_subcommand("keygen", "write PREFIX.pk, PREFIX.sk and, for trees, PREFIX.state");
  keygen->add_option("--scheme", sa.scheme, "lamport | wots | merkle | xmss | fdh")->required();
  keygen->add_option("--params", sa.params, "k=v,...");
  keygen->add_option("--seed", sa.seed, "64 hex digits")->required();
  keygen->add_option("--out", sa.out, "output prefix")->required();
  auto* sign = sig->add_subcommand("sign", "sign a hex message");
  sign->add_option("--key", sa.key, "secret key file")->required();
  sign->add_option("--message", sa.message, "hex")->required();
  sign->add_option("--out", sa.out, "signature file")->required();
  sign->add_option("--state", sa.state, "signer state file (trees)");
  sign->add_option("--seed", sa.seed, "accepted for uniformity; signing is deterministic");
  sign->add_option("--fail-at", sa.fail_at, "")->group("")->check(CLI::IsMember({"before-state", "after-state"}));
  auto* verify = sig->add_subcommand("verify", "print ACCEPT or REJECT");
  verify->add_option("--key", sa.key, "public key file")->required();
  verify->add_option("--message", sa.message, "hex")->required();
  verify->add_option("--sig", sa.sig, "signature file")->required();

  RunArgs ga;
  auto* game = app.add_subcommand("game", "estimate a game value for a fixture adversary");
  game->add_option("--game", ga.name, "game name (see list)")->required();
  game->add_option("--scheme", ga.scheme, "scheme for the forgery game");
  game->add_option("--params", ga.params, "k=v,...");
  game->add_option("--adversary", ga.adversary, "fixture name (see list)")->required();
  game->add_option("--trials", ga.trials)->check(CLI::PositiveNumber);
  game->add_option("--confidence", ga.confidence)->check(CLI::Range(0.5, 0.999999));
  game->add_option("--seed", ga.seed, "64 hex digits")->required();
  game->add_option("--exact-budget", ga.exact_budget, "enumerate exactly when randomness fits (<= 24 bits)");
  game->add_option("--report", ga.report, "also write the report here");

  RunArgs ra;
  auto* red = app.add_subcommand("reduction", "check a reduction against a fixture adversary");
  red->add_option("--reduction", ra.name, "reduction id (see list)")->required();
  red->add_option("--params", ra.params, "k=v,...");
  red->add_option("--adversary", ra.adversary, "internal-game fixture");
  red->add_option("--trials", ra.trials)->check(CLI::PositiveNumber);
  red->add_option("--confidence", ra.confidence)->check(CLI::Range(0.5, 0.999999));
  red->add_option("--seed", ra.seed, "64 hex digits")->required();
  red->add_option("--seeds", ra.seeds, "seeds for the straight-line check")->check(CLI::PositiveNumber);
  red->add_option("--report", ra.report, "also write the report here");

  auto* list = app.add_subcommand("list", "schemes, games, fixtures and reductions");

  std::string vec_dir;
  auto* vectors = app.add_subcommand("vectors", "write pinned evaluator vectors");
  vectors->add_option("--out", vec_dir, "directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) return sig_keygen(sa, out);
    if (*sign) return sig_sign(sa, out, err);
    if (*verify) return sig_verify(sa, out);
    if (*game) return cmd_game(ga, command, out);
    if (*red) return cmd_reduction(ra, command, out);
    if (*list) {
      out << list_text();
      return kOk;
    }
    if (*vectors) return cmd_vectors(vec_dir, out);
  } catch (const UsageError& e) {
    err << "llab: " << e.what() << "\n";
    return kUsage;
  } catch (const IntegrityError& e) {
    err << "llab: integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const ots::StateExhausted& e) {
    err << "llab: signer state exhausted: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "llab: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace llab::cli
