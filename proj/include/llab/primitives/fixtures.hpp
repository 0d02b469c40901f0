#pragma once

#include "llab/game/game.hpp"
#include "llab/primitives/games.hpp"

namespace llab::prim {

/// Aborts on the first message. Fits any interface.
game::AdversaryHandle always_abort(const std::string& interface);

/// Least preimage by exhaustive search; aborts when y has none.
game::AdversaryHandle inv_bruteforce(const FunctionFamilySpec& spec);
/// Replies with one uniformly drawn input.
game::AdversaryHandle inv_random_guess(const FunctionFamilySpec& spec);
/// Least key consistent with (x, y).
game::AdversaryHandle kow_bruteforce(const FunctionFamilySpec& spec);
/// Replies x' = x, which the spr game always rejects.
game::AdversaryHandle spr_replay(const FunctionFamilySpec& spec, const StandardGameOptions& opts = {});
/// Finds a collision among the first 2^(output_bits/2 + 4) four-byte inputs.
game::AdversaryHandle col_birthday(const FunctionFamilySpec& spec);
/// Guesses `bit` without querying.
game::AdversaryHandle prf_constant(const FunctionFamilySpec& spec, const StandardGameOptions& opts, std::uint8_t bit);
/// Queries one point and checks it against the key found by brute force.
game::AdversaryHandle prf_bruteforce(const FunctionFamilySpec& spec, const StandardGameOptions& opts);
/// Factors N by trial division and inverts with the recovered trapdoor.
game::AdversaryHandle tdp_bruteforce(unsigned modulus_bits);

/// Factors N by trial division. N must be a product of two primes.
TdpKeyPair factor_tdp(const TdpPublicKey& pk);

}  // namespace llab::prim
