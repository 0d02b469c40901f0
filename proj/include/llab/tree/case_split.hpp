#pragma once

#include <optional>
#include <vector>

#include "llab/game/game.hpp"
#include "llab/ots/forgery.hpp"
#include "llab/tree/tree.hpp"

namespace llab::tree {

enum class CaseKind { collision, ots_forgery };
std::string_view to_string(CaseKind k);

/// Where a valid forged path first leaves the honest tree.
struct CaseSplit {
  CaseKind kind = CaseKind::collision;
  std::uint64_t node = 1;
  /// collision: the honest and forged hash inputs at `node`.
  Bytes honest_input;
  Bytes forged_input;
  /// ots_forgery: the message and OTS signature that verify under the honest pk at `node`.
  Bytes message;
  Bytes signature;
};

/// Walks the forged path from the root down. At the first node whose forged
/// children differ from the honest ones, equal node messages give a collision
/// and different ones an OTS forgery on the node's key. If every level matches,
/// the leaf signature is the OTS forgery. Only public keys of `honest` are read.
/// Throws std::invalid_argument if the signature does not verify under `honest`.
CaseSplit classify_forgery(const TreeScheme& s, const TreeMaterial& honest, ByteView m, ByteView sig);

/// Message the honest signer gives node `node` to sign when leaf `leaf` signs `m`.
Bytes honest_message_at(const TreeScheme& s, const TreeMaterial& honest, std::uint64_t node, ByteView m);

/// Messages node `node` signed when the honest signer answered `queries` on leaves 0, 1, ...
std::vector<Bytes> signed_at(const TreeScheme& s, const TreeMaterial& honest, const std::vector<Bytes>& queries,
                             std::uint64_t node);

/// Checks the witness from scratch: a collision needs distinct inputs with equal
/// node messages under the honest hash key; an OTS forgery needs a signature valid
/// under the honest pk at the node on a message the node never signed.
bool witness_valid(const TreeScheme& s, const TreeMaterial& honest, const CaseSplit& c,
                   const std::vector<Bytes>& queries);

struct CaseSplitTrial {
  bool internal_succ = false;
  std::optional<CaseSplit> split;
  bool witness_verified = false;
  game::RunFlag flag = game::RunFlag::none;
};

/// One run of the tree forgery game with `forger` at `seed`, followed by
/// classification against the challenger's tree (replayed from the seed).
CaseSplitTrial run_case_split_trial(std::shared_ptr<const TreeScheme> s, const ots::ForgeryGameParams& gp,
                                    const game::AdversaryHandle& forger, const Seed& seed);

}  // namespace llab::tree
