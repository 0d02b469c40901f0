#pragma once

#include <optional>

#include "llab/game/game.hpp"
#include "llab/ots/scheme.hpp"

namespace llab::ots {

struct ForgeryGameParams {
  bool one_time = true;
  std::size_t max_sign_queries = 1;

  static ForgeryGameParams one_time_params() { return {true, 1}; }
  static ForgeryGameParams many(std::size_t q) { return {false, q}; }
};

/// Existential forgery under chosen messages.
///
///   C: 'K' || pk
///   A: 'S' || m                     C: 'G' || sig
///   A: 'F' || blob(m*) || blob(sig*)
///
/// succ iff sig* verifies on m* and m* was never queried. A query beyond
/// max_sign_queries is a flagged fail. Throws std::invalid_argument if one_time
/// is set with max_sign_queries != 1.
game::GamePtr make_forgery_game(SchemePtr scheme, ForgeryGameParams p = ForgeryGameParams::one_time_params());
std::string forgery_interface(const SignatureScheme& scheme, const ForgeryGameParams& p);

constexpr std::size_t kForgeryMaxPayload = std::size_t{1} << 20;

Bytes sign_query(ByteView m);
Bytes forgery_reply(ByteView m, ByteView sig);

struct Forgery {
  Bytes message;
  Bytes signature;
};

/// Parses an adversary's final 'F' message; nullopt if the reply is something else.
/// Throws DecodeError for a malformed 'F' message.
std::optional<Forgery> parse_forgery(ByteView reply);
/// Body of a challenger 'K' or 'G' message; throws DecodeError on a different tag.
Bytes expect_tagged(ByteView msg, std::uint8_t tag);

}  // namespace llab::ots
