#pragma once

#include "llab/fdh/fdh.hpp"
#include "llab/reduction/reduction.hpp"

namespace llab::fdh {

/// Forger in the RO forgery game -> inverter for the permutation.
///
/// Picks a hash-query index j uniformly below max_hash_queries. The j-th fresh
/// hash point is answered with the challenge y*; every other fresh point (hash
/// or signing query) gets f(r) for a fresh unit r, and a signing query on such
/// a point is answered with r. Aborts on a signing query at the embedded point
/// and on a forgery anywhere else; a forgery (m_j, sigma*) yields sigma*.
reduction::TransformerPtr fdh_classical_transformer(const RoGameParams& p);
/// (tdp inversion, T, RO forgery) with beta(x) = x / q_H.
reduction::Reduction fdh_classical_reduction(const RoGameParams& p);

struct InterpreterConfig {
  Rational lambda;
  std::size_t max_sign_queries = 0;
  std::size_t max_hash_queries = 0;
};

/// Config with lambda from choose_lambda(q_H, q_S).
InterpreterConfig interpreter_config(std::size_t q_hash, std::size_t q_sign);

/// Stand-in-game forger -> classical RO forger.
///
/// Hashes the all-zero message a to get b = H(a), answers the forger's hash
/// queries from an SC_lambda oracle with target b, answers signing query m with
/// o1(m) unless o2(m) = 1 (abort), and turns a valid forgery (m*, sigma*) with
/// o2(m*) = 1 into (a, sigma*). Not straight-line: the forger sees SC_lambda
/// instead of the challenger's oracle. Forgers exceeding the configured query
/// bounds make it abort.
reduction::TransformerPtr fdh_interpreter(const RoGameParams& outer, const InterpreterConfig& cfg);
/// (RO forgery, I, stand-in forgery) with beta'(x) = lambda (1 - lambda)^q_S x.
/// `p` describes the stand-in game; the outer game keeps its bounds with the
/// classical flavor.
reduction::Reduction fdh_interpreter_reduction(const RoGameParams& p, const InterpreterConfig& cfg);

struct FdhReport {
  RoGameParams params;
  Rational lambda;
  Rational distance_budget;
  Rational no_abort_lower_bound;
  std::string lambda_rationale;
  reduction::BetaSpec beta = reduction::BetaSpec::scalar(1);
  reduction::BetaSpec beta_prime = reduction::BetaSpec::scalar(1);
  game::GameValueEstimate internal;     // forger in the stand-in game
  game::GameValueEstimate interpreted;  // I(forger) in the RO game
  game::GameValueEstimate composed;     // T(I(forger)) in the inversion game
  double prediction = 0;                // beta(beta'(internal.point))
  double slack = 0;                     // sum of the three half-widths
  bool satisfied = false;               // composed.point >= prediction - slack
};

/// Measures the chain stand-in forgery -> RO forgery -> inversion for `forger`
/// with lambda from choose_lambda; `forger` speaks the stand-in interface. Estimates use independent seeds derived
/// from `seed`.
FdhReport run_fdh_end_to_end(const RoGameParams& p, const game::AdversaryHandle& forger, std::uint64_t trials,
                             double confidence, const Seed& seed);

/// One "key: value" per line.
std::string to_text(const FdhReport& r);

}  // namespace llab::fdh
