#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "llab/bytes.hpp"
#include "llab/numeric.hpp"
#include "llab/primitives/tdp.hpp"
#include "llab/seed.hpp"
#include "llab/tape.hpp"

namespace llab::fdh {

/// Output set of an oracle: integers in [0, bound), or only the units of Z_bound.
struct OracleRange {
  BigInt bound;
  bool units_only = false;

  static OracleRange integers(BigInt n) { return {std::move(n), false}; }
  static OracleRange units(BigInt n) { return {std::move(n), true}; }
  /// Throws std::invalid_argument on an empty range or one wider than 64 bits.
  void validate() const;
  bool contains(const BigInt& v) const;
};

/// Lazily sampled random function.
///
/// A seeded oracle derives the value at x from (seed, x) alone, so two oracles
/// with one seed agree everywhere. A tape-backed oracle draws each fresh value
/// from the tape, in first-query order; games use it so every oracle value is
/// a challenger draw.
class LazyOracle {
 public:
  LazyOracle(const Seed& seed, OracleRange range);
  /// `tape` must outlive the oracle.
  LazyOracle(RandomTape& tape, OracleRange range);

  BigInt query(ByteView x);
  /// Value at x if it has been fixed, without fixing it.
  std::optional<BigInt> peek(ByteView x) const;
  /// Fixes the value at x. Throws std::logic_error if x already has a value.
  void program(ByteView x, const BigInt& v);

  const OracleRange& range() const { return range_; }
  /// Distinct inputs, in the order they were first queried or programmed.
  const std::vector<Bytes>& query_log() const { return log_; }
  std::size_t observed() const { return log_.size(); }

 private:
  BigInt fresh(ByteView x);

  OracleRange range_;
  std::optional<Seed> seed_;
  RandomTape* tape_ = nullptr;
  std::map<Bytes, BigInt> table_;
  std::vector<Bytes> log_;
};

/// One function from SC_lambda over a permuted range:
///   H(x) = target          when o2(x) = 1,
///   H(x) = perm(o1(x))     otherwise,
/// with o2(x) = 1 exactly when a uniform value below den(lambda) falls below num(lambda).
/// Every x gets its own independent o1 and o2 values.
class SemiConstantOracle {
 public:
  using Permutation = std::function<BigInt(const BigInt&)>;

  SemiConstantOracle(Rational lambda, BigInt target, OracleRange range, Permutation perm, const Seed& seed);

  BigInt query(ByteView x);
  bool o2(ByteView x);
  BigInt o1(ByteView x);

  const Rational& lambda() const { return lambda_; }
  const BigInt& target() const { return target_; }
  std::size_t observed() const { return seen_.size(); }

 private:
  Rational lambda_;
  BigInt target_;
  Permutation perm_;
  LazyOracle o1_;
  LazyOracle o2_;
  std::map<Bytes, bool> seen_;
};

/// SC_lambda with o1 mapping into Z_N* and perm = f_pk. Throws std::invalid_argument
/// unless 0 < lambda < 1 and target is a unit mod N.
SemiConstantOracle sample_sc_oracle(const Rational& lambda, const BigInt& target, const prim::TdpPublicKey& pk,
                                    const Seed& seed);
/// SC_lambda over [0, size) with the identity permutation.
SemiConstantOracle sample_sc_oracle(const Rational& lambda, const BigInt& target, const BigInt& size, const Seed& seed);

/// (8/3) q_H^4 lambda^2, clamped to [0, 1].
Rational sc_distance_budget(std::uint64_t q_hash, const Rational& lambda);

struct LambdaChoice {
  Rational lambda;
  Rational distance_budget;
  /// (1 - lambda)^q_S: lower bound on the chance no signing query hits o2 = 1.
  Rational no_abort_lower_bound;
  std::string rationale;
};

/// lambda = 1 / (2 (q_S + 1) max(q_H, 1)^2).
LambdaChoice choose_lambda(std::uint64_t q_hash, std::uint64_t q_sign);

}  // namespace llab::fdh
