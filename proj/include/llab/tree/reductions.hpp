#pragma once

#include "llab/ots/forgery.hpp"
#include "llab/reduction/reduction.hpp"
#include "llab/tree/tree.hpp"

namespace llab::tree {

enum class TreeTarget { collision_or_spr, ots_forgery };

/// External game of the tree reduction: col over the hash for Merkle, spr over
/// 2-public-key inputs for XMSS, the one-time forgery game on the node OTS for
/// ots_forgery.
game::GamePtr tree_external_game(const TreeParams& p, TreeTarget target);

/// Forger for the tree -> breaker for the hash or the node OTS.
///
/// Builds an honest tree around the external challenge and runs the forger once.
///   Merkle, collision_or_spr: the challenge key is the hash key; any collision
///     the forged path exposes is output.
///   XMSS, collision_or_spr: picks an internal node w* and sets the mask at its
///     level so that its honest hash input is the challenge x; outputs the forged
///     input when the collision sits at w*.
///   ots_forgery: picks a node w* and plants the challenge pk there; the one
///     signature w* ever needs is fetched with the external signing query. Outputs
///     the OTS forgery when it sits at w*.
/// Any other outcome aborts.
reduction::TransformerPtr tree_forger_transformer(const TreeParams& p, TreeTarget target,
                                                  std::size_t max_queries = 1);

/// (external, T, q-query tree forgery game) with claimed beta(x) = x.
reduction::Reduction tree_reduction(const TreeParams& p, TreeTarget target, std::size_t max_queries = 1);

}  // namespace llab::tree
