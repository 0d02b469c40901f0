#pragma once

#include "llab/ots/forgery.hpp"
#include "llab/ots/lamport.hpp"
#include "llab/ots/wots.hpp"

namespace llab::ots {

/// Without a query: forges the all-zero message by inverting every needed pk
/// element (least preimage). With a query: signs a random message m, then forges
/// m with its last bit flipped, reusing revealed elements where it can.
game::AdversaryHandle lamport_bruteforce_forger(const LamportParams& p, bool use_query = false);
/// Same input/output behavior as lamport_bruteforce_forger(p, false), written
/// as a scan over the whole domain.
game::AdversaryHandle lamport_bruteforce_forger_twin(const LamportParams& p);

/// Brute-forces chain values for the all-zero message, or, with a query, for the
/// queried message with its last bit flipped, walking revealed chain values forward
/// where the digit grows.
game::AdversaryHandle wots_bruteforce_forger(const WotsParams& p, bool use_query = false);

/// Signature on m under pk found by exhaustive search. Supports Lamport and
/// W-OTS over weak families; nullopt if some element has no preimage.
std::optional<Bytes> bruteforce_sign(const SignatureScheme& s, ByteView pk, ByteView m);

/// Queries the all-zero message and hands the answer back as its forgery.
game::AdversaryHandle replay_forger(const SignatureScheme& scheme, const ForgeryGameParams& gp);
/// Queries one message more than the game allows.
game::AdversaryHandle greedy_forger(const SignatureScheme& scheme, const ForgeryGameParams& gp);

}  // namespace llab::ots
