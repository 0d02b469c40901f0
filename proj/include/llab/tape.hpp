#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "llab/bytes.hpp"
#include "llab/seed.hpp"

namespace llab {

/// One uniform choice from [0, bound).
struct Draw {
  std::uint64_t bound = 1;
  std::uint64_t value = 0;
  bool operator==(const Draw&) const = default;
};

/// Source of every random choice made by challengers, adversaries and transformers.
///
/// Programs only ever ask for uniform values in [0, bound). Keeping that the sole
/// primitive is what lets the same program run against a seeded generator, a
/// replay script, or the exhaustive enumerator used by exact_value.
class RandomTape {
 public:
  virtual ~RandomTape() = default;

  /// Uniform in [0, bound). bound must be at least 1.
  virtual std::uint64_t draw(std::uint64_t bound) = 0;

  /// An independent stream for a sub-program. Under enumeration the fork shares the
  /// parent's choice sequence, which is still an independent uniform stream.
  virtual std::unique_ptr<RandomTape> fork(std::string_view tag) = 0;

  bool coin() { return draw(2) == 1; }
  /// n draws with bound 256.
  Bytes bytes(std::size_t n);
  /// Uniform n-bit value, n in [0, 63].
  std::uint64_t bits(unsigned n) { return draw(std::uint64_t{1} << n); }
};

/// SHA-256 counter-mode generator with rejection sampling.
class DrbgTape final : public RandomTape {
 public:
  explicit DrbgTape(const Seed& seed);
  std::uint64_t draw(std::uint64_t bound) override;
  std::unique_ptr<RandomTape> fork(std::string_view tag) override;
  const Seed& seed() const { return seed_; }

 private:
  std::uint64_t next_word();

  Seed seed_;
  std::uint64_t counter_ = 0;
  std::uint64_t buf_[4] = {};
  unsigned avail_ = 0;
  // Fork counters are per tag so one sub-program's forks never shift another's.
  std::map<std::string, std::uint64_t> forks_;
};

/// Raised when a scripted draw is requested with a different bound than scripted.
class ScriptMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replays a fixed list of draws, then continues from a fallback generator.
class ScriptedTape final : public RandomTape {
 public:
  ScriptedTape(std::vector<Draw> script, const Seed& fallback);
  std::uint64_t draw(std::uint64_t bound) override;
  std::unique_ptr<RandomTape> fork(std::string_view tag) override;

  std::size_t consumed() const { return pos_; }
  bool exhausted() const { return pos_ >= script_.size(); }

 private:
  std::vector<Draw> script_;
  std::size_t pos_ = 0;
  DrbgTape fallback_;
};

/// Records the draws taken directly from it. Forks are passed through unrecorded.
class RecordingTape final : public RandomTape {
 public:
  explicit RecordingTape(RandomTape& inner) : inner_(inner) {}
  std::uint64_t draw(std::uint64_t bound) override;
  std::unique_ptr<RandomTape> fork(std::string_view tag) override { return inner_.fork(tag); }
  const std::vector<Draw>& draws() const { return draws_; }

 private:
  RandomTape& inner_;
  std::vector<Draw> draws_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Depth-first walk over every sequence of choices a deterministic program can make.
///
/// Usage: run the program once per leaf, calling advance() between runs, until it
/// returns false. weight() is the probability of the leaf just run.
class EnumerationTape final : public RandomTape {
 public:
  explicit EnumerationTape(unsigned budget_bits);
  std::uint64_t draw(std::uint64_t bound) override;
  std::unique_ptr<RandomTape> fork(std::string_view tag) override;

  /// Product of the bounds drawn on the current leaf.
  std::uint64_t leaf_denominator() const { return denom_; }
  /// Moves to the next leaf; false once every leaf has been visited.
  bool advance();

 private:
  unsigned budget_bits_;
  std::vector<Draw> path_;
  std::size_t pos_ = 0;
  std::uint64_t denom_ = 1;
};

}  // namespace llab
