#pragma once

#include <memory>
#include <string>
#include <vector>

#include "llab/game/game.hpp"
#include "llab/numeric.hpp"

namespace llab::reduction {

/// Seeded distribution over byte strings of a fixed length.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  virtual std::size_t output_length() const = 0;
  virtual double randomness_bits() const = 0;
  virtual Bytes sample(RandomTape& tape) const = 0;
};

using SamplerPtr = std::shared_ptr<const Sampler>;

SamplerPtr constant_sampler(Bytes value);
/// Outcome i has probability weights[i] / sum(weights); sampled with one draw.
SamplerPtr table_sampler(std::string name, std::vector<Bytes> outcomes, std::vector<std::uint64_t> weights);

/// Challenger flips b, sends left() if b = 0 and right() if b = 1, and wins for the
/// adversary iff its one-byte reply equals b. Reveals b afterwards.
/// Throws std::invalid_argument if the samplers' lengths differ.
game::GamePtr build_distinguishing_game(SamplerPtr left, SamplerPtr right);
std::string distinguishing_interface(std::size_t length);

/// Replies with predicate(sample) as its guess.
game::AdversaryHandle predicate_distinguisher(std::string name, std::size_t length,
                                              std::function<bool(ByteView)> predicate);

struct HybridChain {
  std::vector<SamplerPtr> samplers;
};

struct HybridReport {
  /// Exact value on game(D_i, D_{i+1}).
  std::vector<Rational> adjacent_values;
  Rational end_to_end;
  /// |2v - 1| and the sum of |2v_i - 1|.
  Rational end_to_end_advantage;
  Rational summed_advantage;
  bool holds = false;
};

/// Throws std::invalid_argument for chains shorter than two samplers or with
/// mixed lengths, and BudgetExceeded when a pair cannot be enumerated.
HybridReport hybrid_chain_check(const HybridChain& chain, const game::AdversaryHandle& distinguisher,
                                unsigned randomness_budget);

}  // namespace llab::reduction
