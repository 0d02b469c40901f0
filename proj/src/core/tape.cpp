#include "llab/tape.hpp"

#include <cstring>
#include <string>

#include "llab/sha256.hpp"

namespace llab {

Bytes RandomTape::bytes(std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(draw(256));
  return out;
}

DrbgTape::DrbgTape(const Seed& seed) : seed_(seed) {}

std::uint64_t DrbgTape::next_word() {
  if (avail_ == 0) {
    std::uint8_t ctr[8];
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
    ++counter_;
    Digest d = Sha256().update(seed_.bytes).update(ByteView(ctr, 8)).finish();
    for (int w = 0; w < 4; ++w) {
      std::uint64_t v = 0;
      for (int i = 0; i < 8; ++i) v = (v << 8) | d[8 * w + i];
      buf_[w] = v;
    }
    avail_ = 4;
  }
  return buf_[4 - avail_--];
}

std::uint64_t DrbgTape::draw(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw bound must be positive");
  if (bound == 1) return 0;
  if ((bound & (bound - 1)) == 0) return next_word() & (bound - 1);
  // Reject the top (2^64 mod bound) words so the reduction is exactly uniform.
  const std::uint64_t rem = (0 - bound) % bound;
  const std::uint64_t max_ok = ~std::uint64_t{0} - rem;
  for (;;) {
    std::uint64_t w = next_word();
    if (w <= max_ok) return w % bound;
  }
}

std::unique_ptr<RandomTape> DrbgTape::fork(std::string_view tag) {
  return std::make_unique<DrbgTape>(derive_seed(seed_, tag, forks_[std::string(tag)]++));
}

ScriptedTape::ScriptedTape(std::vector<Draw> script, const Seed& fallback)
    : script_(std::move(script)), fallback_(fallback) {}

std::uint64_t ScriptedTape::draw(std::uint64_t bound) {
  if (pos_ < script_.size()) {
    const Draw& d = script_[pos_];
    if (d.bound != bound) {
      throw ScriptMismatch("scripted draw " + std::to_string(pos_) + " has bound " + std::to_string(d.bound) +
                           " but the program asked for bound " + std::to_string(bound));
    }
    if (d.value >= bound) throw ScriptMismatch("scripted draw " + std::to_string(pos_) + " out of range");
    ++pos_;
    return d.value;
  }
  ++pos_;
  return fallback_.draw(bound);
}

std::unique_ptr<RandomTape> ScriptedTape::fork(std::string_view tag) { return fallback_.fork(tag); }

std::uint64_t RecordingTape::draw(std::uint64_t bound) {
  std::uint64_t v = inner_.draw(bound);
  draws_.push_back({bound, v});
  return v;
}

namespace {

/// Fork of an enumeration tape: same choice stream, so it is enumerated too.
class SharedStream final : public RandomTape {
 public:
  explicit SharedStream(RandomTape& root) : root_(root) {}
  std::uint64_t draw(std::uint64_t bound) override { return root_.draw(bound); }
  std::unique_ptr<RandomTape> fork(std::string_view) override { return std::make_unique<SharedStream>(root_); }

 private:
  RandomTape& root_;
};

}  // namespace

EnumerationTape::EnumerationTape(unsigned budget_bits) : budget_bits_(budget_bits) {
  if (budget_bits > 24) throw BudgetExceeded("enumeration budget is capped at 24 bits");
}

std::uint64_t EnumerationTape::draw(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw bound must be positive");
  if (pos_ < path_.size()) {
    if (path_[pos_].bound != bound) throw std::logic_error("program is not deterministic in its tape");
    return path_[pos_++].value;
  }
  if (bound > (std::uint64_t{1} << budget_bits_) / denom_) {
    throw BudgetExceeded("random choices exceed the " + std::to_string(budget_bits_) + "-bit enumeration budget");
  }
  denom_ *= bound;
  path_.push_back({bound, 0});
  ++pos_;
  return 0;
}

std::unique_ptr<RandomTape> EnumerationTape::fork(std::string_view) { return std::make_unique<SharedStream>(*this); }

bool EnumerationTape::advance() {
  path_.resize(pos_);
  denom_ = 1;
  for (const Draw& d : path_) denom_ *= d.bound;
  while (!path_.empty() && path_.back().value + 1 == path_.back().bound) {
    denom_ /= path_.back().bound;
    path_.pop_back();
  }
  pos_ = 0;
  if (path_.empty()) return false;
  ++path_.back().value;
  return true;
}

}  // namespace llab
