#pragma once

#include <memory>
#include <string>

#include "llab/reduction/reduction.hpp"

namespace llab::reduction {

/// Adversary whose sessions are `Session(box, cfg, tape)`.
template <typename Session>
class SessionAdversary final : public game::Adversary {
 public:
  using Config = typename Session::Config;
  SessionAdversary(BlackBox box, Config cfg, std::string name, std::string iface, double extra_bits)
      : box_(std::move(box)), cfg_(std::move(cfg)), name_(std::move(name)), iface_(std::move(iface)),
        extra_(extra_bits) {}
  std::string name() const override { return name_; }
  std::string interface() const override { return iface_; }
  double randomness_bits() const override { return box_.randomness_bits() + extra_; }
  std::unique_ptr<game::AdversarySession> spawn(RandomTape& tape) const override {
    return std::make_unique<Session>(box_, cfg_, tape);
  }

 private:
  BlackBox box_;
  Config cfg_;
  std::string name_;
  std::string iface_;
  double extra_;
};

}  // namespace llab::reduction
