#include "llab/tree/case_split.hpp"

#include <algorithm>
#include <stdexcept>

namespace llab::tree {

std::string_view to_string(CaseKind k) { return k == CaseKind::collision ? "collision" : "ots_forgery"; }

namespace {

Bytes honest_input(const TreeScheme& s, const TreeMaterial& t, std::uint64_t w) {
  return s.node_input(t.masks, TreeScheme::level_of(w), t.nodes[2 * w].pk, t.nodes[2 * w + 1].pk);
}

}  // namespace

CaseSplit classify_forgery(const TreeScheme& s, const TreeMaterial& honest, ByteView m, ByteView sig) {
  const auto& p = s.params();
  if (!s.verify(s.encode_pk(honest), m, sig)) throw std::invalid_argument("forgery does not verify under the honest tree");
  const TreeSignature fs = s.decode_sig(sig);
  const std::uint64_t leaf = p.leaves() + fs.leaf_index;
  CaseSplit c;
  for (unsigned d = 0; d < p.depth; ++d) {
    const std::uint64_t w = leaf >> (p.depth - d);
    const PathTriple& t = fs.path[p.depth - 1 - d];
    if (t.pk_left == honest.nodes[2 * w].pk && t.pk_right == honest.nodes[2 * w + 1].pk) continue;
    c.node = w;
    c.honest_input = honest_input(s, honest, w);
    c.forged_input = s.node_input(honest.masks, d, t.pk_left, t.pk_right);
    const Bytes forged_msg = s.node_message(honest.hash_key, c.forged_input);
    if (forged_msg == s.node_message(honest.hash_key, c.honest_input)) {
      c.kind = CaseKind::collision;
    } else {
      c.kind = CaseKind::ots_forgery;
      c.message = forged_msg;
      c.signature = t.sig;
      c.honest_input.clear();
      c.forged_input.clear();
    }
    return c;
  }
  c.kind = CaseKind::ots_forgery;
  c.node = leaf;
  c.message = Bytes(m.begin(), m.end());
  c.signature = fs.leaf_sig;
  return c;
}

Bytes honest_message_at(const TreeScheme& s, const TreeMaterial& honest, std::uint64_t node, ByteView m) {
  if (node >= s.params().leaves()) return Bytes(m.begin(), m.end());
  return s.node_message(honest.hash_key, honest_input(s, honest, node));
}

std::vector<Bytes> signed_at(const TreeScheme& s, const TreeMaterial& honest, const std::vector<Bytes>& queries,
                             std::uint64_t node) {
  const auto& p = s.params();
  const unsigned below = p.depth - TreeScheme::level_of(node);
  std::vector<Bytes> out;
  for (std::uint64_t j = 0; j < queries.size() && j < p.leaves(); ++j) {
    if (((p.leaves() + j) >> below) != node) continue;
    Bytes msg = honest_message_at(s, honest, node, queries[j]);
    if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(std::move(msg));
  }
  return out;
}

bool witness_valid(const TreeScheme& s, const TreeMaterial& honest, const CaseSplit& c,
                   const std::vector<Bytes>& queries) {
  const auto& p = s.params();
  if (c.node < 1 || c.node > p.node_count()) return false;
  if (c.kind == CaseKind::collision) {
    if (c.node >= p.leaves() || c.honest_input == c.forged_input) return false;
    if (c.honest_input != honest_input(s, honest, c.node)) return false;
    return s.node_message(honest.hash_key, c.honest_input) == s.node_message(honest.hash_key, c.forged_input);
  }
  if (!p.ots->verify(honest.nodes[c.node].pk, c.message, c.signature)) return false;
  const auto seen = signed_at(s, honest, queries, c.node);
  return std::find(seen.begin(), seen.end(), c.message) == seen.end();
}

CaseSplitTrial run_case_split_trial(std::shared_ptr<const TreeScheme> s, const ots::ForgeryGameParams& gp,
                                    const game::AdversaryHandle& forger, const Seed& seed) {
  game::GamePtr g = ots::make_forgery_game(s, gp);
  game::PlayResult r = game::run_game(*g, forger, seed);
  CaseSplitTrial out;
  out.flag = r.outcome.flag;
  out.internal_succ = r.outcome.succ();
  if (!out.internal_succ) return out;

  DrbgTape replay(derive_seed(seed, role::kChallenger));
  const TreeMaterial honest = s->generate(replay);
  std::vector<Bytes> queries;
  std::optional<ots::Forgery> f;
  for (const auto& msg : r.transcript.messages) {
    if (msg.sender != game::Role::adversary || msg.payload.empty()) continue;
    if (msg.payload[0] == 'S') queries.emplace_back(msg.payload.begin() + 1, msg.payload.end());
    if (msg.payload[0] == 'F') f = ots::parse_forgery(msg.payload);
  }
  if (!f) throw std::logic_error("successful run without a forgery message");
  out.split = classify_forgery(*s, honest, f->message, f->signature);
  out.witness_verified = witness_valid(*s, honest, *out.split, queries);
  return out;
}

}  // namespace llab::tree
