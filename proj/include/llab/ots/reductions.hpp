#pragma once

#include "llab/ots/forgery.hpp"
#include "llab/ots/lamport.hpp"
#include "llab/ots/wots.hpp"
#include "llab/reduction/reduction.hpp"

namespace llab::ots {

/// Forger for the one-time Lamport game -> inverter for the OWF.
///
/// Picks a slot (i*, b*) uniformly from tape.fork("transformer"), plants y there
/// and draws every other secret element honestly, in slot order. Aborts when the
/// signing query needs the planted slot, and answers with sigma*_{i*} when the
/// forged message has bit b* at position i* and that element maps to y.
reduction::TransformerPtr lamport_inverter_transformer(const LamportParams& p);
/// (inv, T, one-time forgery) with beta(x) = x / (2l).
reduction::Reduction lamport_reduction(const LamportParams& p);

/// Forger for the one-time W-OTS game -> key-one-wayness adversary for the PRF.
///
/// Uses the challenge x as the public x, picks a chain nu uniformly and treats the
/// unknown key k as its start, so c^1_nu = y. Aborts when a query has digit 0 on
/// chain nu; extracts k' = sigma*_nu when the forgery has digit 0 there and
/// f_{k'}(x) = y.
reduction::TransformerPtr wots_kow_transformer(const WotsParams& p);
/// (kow, T, one-time forgery) with the claimed beta(x) = x.
reduction::Reduction wots_kow_reduction(const WotsParams& p);

}  // namespace llab::ots
