#pragma once

#include "llab/reduction/reduction.hpp"

namespace llab::reduction {

/// Relays messages unchanged. Its correspondence is the identity on draws, so it
/// fits reductions whose external and internal games coincide.
TransformerPtr identity_transformer(const std::string& interface);
/// Identity reduction (G, identity, G) with beta(x) = x.
Reduction identity_reduction(const game::GamePtr& g);

/// Counterexample: after the first reply it restarts the adversary on fresh coins
/// and replays the first message, then relays for the restarted copy.
TransformerPtr rewinding_transformer(const std::string& interface);

/// Counterexample: a white-box wrapper that aborts unless the adversary's
/// declared name is `favourite`.
TransformerPtr name_branching_transformer(const std::string& interface, std::string favourite);

/// XORs every adversary reply with `mask` (repeated). Order-sensitive, for
/// associativity tests.
TransformerPtr xor_reply_transformer(const std::string& interface, std::uint8_t mask);

/// Opaque one-round game used as a named placeholder inside abstract chains.
/// All placeholders share the interface "opaque/v1".
game::GamePtr placeholder_game(std::string name);

/// The three abstract reductions of the UOWHF-from-OWF chain at inner length l:
///   (inv, T1, inv'),  beta = x / l
///   (inv', T2, col''), beta = x / 3
///   (col'', T3, col'), beta = x / (5 l + ceil(log2 l) + 2)
std::vector<Reduction> rompel_chain(std::uint64_t l);
/// Left-nested composition of rompel_chain(l).
Reduction rompel_composed(std::uint64_t l);

unsigned ceil_log2(std::uint64_t v);

}  // namespace llab::reduction
