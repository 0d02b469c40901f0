#pragma once

#include "llab/game/game.hpp"
#include "llab/tree/tree.hpp"

namespace llab::tree {

/// One-query forger against a weak tree.
///
/// Asks for the all-zero message (leaf 0), then draws up to `tries` fake key
/// pairs for node 2 from a nonce of `nonce_bits` bits, looking for one whose
/// root message collides with the honest one. On a hit it reuses the honest root
/// signature; otherwise it brute-forces the root OTS on the last candidate. Either
/// way it grafts a fake subtree under node 2 and signs the zero message with its
/// last bit flipped at leaf 0.
game::AdversaryHandle tree_birthday_forger(const TreeParams& p, unsigned tries = 128, unsigned nonce_bits = 16);

}  // namespace llab::tree
