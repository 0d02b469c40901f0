#pragma once

#include "llab/fdh/fdh.hpp"

namespace llab::fdh {

/// Hashes `hash_queries` distinct random messages, asks for `sign_queries`
/// signatures on other messages, then forges on one hashed message chosen
/// uniformly by factoring N. Speaks the interface of `p`.
game::AdversaryHandle fdh_bruteforce_forger(const RoGameParams& p, std::size_t hash_queries,
                                            std::size_t sign_queries = 0);

/// Hashes `probes` fixed messages and forges by factoring N. With
/// pick_repeated it forges on a message whose hash value repeats among the
/// probes; otherwise on one whose value is unique. Aborts if there is none.
/// Against an SC oracle with a large lambda, repeated values are the target.
game::AdversaryHandle fdh_sc_probe_forger(const RoGameParams& p, std::size_t probes, bool pick_repeated);

}  // namespace llab::fdh
