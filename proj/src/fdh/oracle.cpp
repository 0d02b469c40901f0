#include "llab/fdh/oracle.hpp"

#include <limits>
#include <stdexcept>

namespace llab::fdh {

void OracleRange::validate() const {
  if (bound < 1) throw std::invalid_argument("oracle range is empty");
  if (bound > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::invalid_argument("oracle range wider than 64 bits");
  if (units_only && bound < 2) throw std::invalid_argument("Z_1 has no units to sample");
}

bool OracleRange::contains(const BigInt& v) const {
  if (v < 0 || v >= bound) return false;
  return !units_only || prim::in_units(bound, v);
}

LazyOracle::LazyOracle(const Seed& seed, OracleRange range) : range_(std::move(range)), seed_(seed) {
  range_.validate();
}

LazyOracle::LazyOracle(RandomTape& tape, OracleRange range) : range_(std::move(range)), tape_(&tape) {
  range_.validate();
}

BigInt LazyOracle::fresh(ByteView x) {
  auto sample = [&](RandomTape& t) {
    if (range_.units_only) return prim::sample_unit(range_.bound, t);
    return BigInt(t.draw(range_.bound.convert_to<std::uint64_t>()));
  };
  if (tape_ != nullptr) return sample(*tape_);
  DrbgTape t(derive_seed(*seed_, "oracle:" + to_hex(x)));
  return sample(t);
}

BigInt LazyOracle::query(ByteView x) {
  Bytes key(x.begin(), x.end());
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  BigInt v = fresh(x);
  log_.push_back(key);
  table_.emplace(std::move(key), v);
  return v;
}

std::optional<BigInt> LazyOracle::peek(ByteView x) const {
  auto it = table_.find(Bytes(x.begin(), x.end()));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void LazyOracle::program(ByteView x, const BigInt& v) {
  Bytes key(x.begin(), x.end());
  if (table_.count(key) != 0) throw std::logic_error("oracle point is already fixed");
  if (!range_.contains(v)) throw std::invalid_argument("programmed value outside the oracle range");
  log_.push_back(key);
  table_.emplace(std::move(key), v);
}

namespace {

OracleRange coin_range(const Rational& lambda) {
  if (!(lambda > 0 && lambda < 1)) throw std::invalid_argument("lambda must lie in the open interval (0,1)");
  return OracleRange::integers(denominator(lambda));
}

}  // namespace

SemiConstantOracle::SemiConstantOracle(Rational lambda, BigInt target, OracleRange range, Permutation perm,
                                       const Seed& seed)
    : lambda_(std::move(lambda)),
      target_(std::move(target)),
      perm_(std::move(perm)),
      o1_(derive_seed(seed, "sc-o1"), std::move(range)),
      o2_(derive_seed(seed, "sc-o2"), coin_range(lambda_)) {
  if (!o1_.range().contains(target_)) throw std::invalid_argument("target lies outside the range");
}

bool SemiConstantOracle::o2(ByteView x) { return o2_.query(x) < numerator(lambda_); }

BigInt SemiConstantOracle::o1(ByteView x) { return o1_.query(x); }

BigInt SemiConstantOracle::query(ByteView x) {
  seen_.emplace(Bytes(x.begin(), x.end()), true);
  if (o2(x)) return target_;
  return perm_(o1(x));
}

SemiConstantOracle sample_sc_oracle(const Rational& lambda, const BigInt& target, const prim::TdpPublicKey& pk,
                                    const Seed& seed) {
  return SemiConstantOracle(lambda, target, OracleRange::units(pk.n),
                            [pk](const BigInt& v) { return prim::tdp_forward(pk, v); }, seed);
}

SemiConstantOracle sample_sc_oracle(const Rational& lambda, const BigInt& target, const BigInt& size,
                                    const Seed& seed) {
  return SemiConstantOracle(lambda, target, OracleRange::integers(size), [](const BigInt& v) { return v; }, seed);
}

Rational sc_distance_budget(std::uint64_t q_hash, const Rational& lambda) {
  const BigInt q(q_hash);
  Rational d = Rational(8, 3) * Rational(q * q * q * q) * lambda * lambda;
  if (d < 0) return 0;
  if (d > 1) return 1;
  return d;
}

LambdaChoice choose_lambda(std::uint64_t q_hash, std::uint64_t q_sign) {
  const BigInt qh(std::max<std::uint64_t>(q_hash, 1));
  LambdaChoice c;
  c.lambda = Rational(BigInt(1), 2 * (BigInt(q_sign) + 1) * qh * qh);
  c.distance_budget = sc_distance_budget(q_hash, c.lambda);
  Rational keep = 1 - c.lambda;
  c.no_abort_lower_bound = 1;
  for (std::uint64_t i = 0; i < q_sign; ++i) c.no_abort_lower_bound *= keep;
  c.rationale = "lambda = 1/(2(q_S+1)max(q_H,1)^2) keeps the signing-abort chance below 1/2 and the SC distance at " +
                rational_string(c.distance_budget);
  return c;
}

}  // namespace llab::fdh
