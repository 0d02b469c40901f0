#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "llab/tape.hpp"

namespace llab::reduction {

/// The internal challenger's draws, in order, as a transformer reconstructs them:
/// its own recorded draws plus slots filled from the external challenger's draws.
struct DrawPlan {
  static constexpr std::size_t kRest = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<Draw>> parts;
  /// Part indices filled from external draws, consumed in order; kRest takes the remainder.
  std::vector<std::size_t> external_slots;
  std::vector<std::size_t> external_sizes;

  std::vector<Draw> resolve(std::span<const Draw> ext) const {
    std::vector<std::vector<Draw>> filled = parts;
    std::size_t at = 0;
    for (std::size_t i = 0; i < external_slots.size(); ++i) {
      const std::size_t n = external_sizes[i] == kRest ? ext.size() - at : external_sizes[i];
      if (at + n > ext.size()) throw std::logic_error("external challenger drew less than expected");
      filled[external_slots[i]].assign(ext.begin() + static_cast<std::ptrdiff_t>(at),
                                       ext.begin() + static_cast<std::ptrdiff_t>(at + n));
      at += n;
    }
    std::vector<Draw> out;
    for (const auto& p : filled) out.insert(out.end(), p.begin(), p.end());
    return out;
  }
};

/// Runs `sample` on `tape` and stores exactly the draws it took.
template <typename F>
auto recorded(RandomTape& tape, std::vector<Draw>& into, F&& sample) {
  RecordingTape rec(tape);
  auto v = sample(rec);
  into = rec.draws();
  return v;
}

}  // namespace llab::reduction
