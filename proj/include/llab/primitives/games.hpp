#pragma once

#include <cstddef>
#include <string>

#include "llab/game/game.hpp"
#include "llab/primitives/family.hpp"
#include "llab/primitives/tdp.hpp"

namespace llab::prim {

enum class StandardGameKind { inv, kow, spr, prf, col };

std::string game_kind_name(StandardGameKind k);

struct StandardGameOptions {
  /// Message length for spr/col over variable-input hashes.
  std::size_t input_bytes = 0;
  /// Oracle query bound for the prf game.
  std::size_t max_queries = 16;
};

/// Wire formats (all values fixed-width big-endian per the family spec):
///   inv  C: y                    A: x'
///   kow  C: x || y               A: k'
///   spr  C: key || x             A: x'
///   col  C: key                  A: blob(x) || blob(x')
///   prf  C: 'R' | 'A' || y       A: 'Q' || x | 'B' || guess ; reveal 'b' || bit
/// bit = 0 is the keyed function, bit = 1 the lazily sampled random function.
/// Throws std::invalid_argument if the family kind does not fit the game.
game::GamePtr standard_game(StandardGameKind kind, const FunctionFamilySpec& spec,
                            const StandardGameOptions& opts = {});
std::string standard_interface(StandardGameKind kind, const FunctionFamilySpec& spec,
                               const StandardGameOptions& opts = {});

/// Keys come from 32 challenger draws of 256 fed to tdp_keygen; x is uniform in Z_N*.
///   C: blob(N) || blob(e) || blob(y)     A: blob(x')
/// modulus_bits <= 62 so every value fits one draw.
game::GamePtr tdp_inversion_game(unsigned modulus_bits);
std::string tdp_interface(unsigned modulus_bits);

/// Seed assembled from 32 draws of 256.
Seed draw_seed(RandomTape& tape);

/// Spec fingerprint used inside interface strings and game ids.
std::string spec_tag(const FunctionFamilySpec& spec);

}  // namespace llab::prim
