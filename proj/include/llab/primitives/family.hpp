#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "llab/bytes.hpp"
#include "llab/tape.hpp"

namespace llab::prim {

enum class Kind { owf, prf, spr_hash, generic_hash };
enum class Strength { full, weak };

std::string kind_name(Kind k);

/// A keyed function family evaluated on the SHA-256 core.
///
/// Keys, inputs and outputs are big-endian integers right-aligned in
/// ceil(bits/8) bytes; bits above the declared width must be zero.
/// input_bits = 0 means the family takes inputs of any byte length.
struct FunctionFamilySpec {
  Kind kind = Kind::owf;
  unsigned key_bits = 0;
  unsigned input_bits = 0;
  unsigned output_bits = 256;
  Strength strength = Strength::full;
  std::string evaluator_id = "sha256";

  std::size_t key_bytes() const { return (key_bits + 7) / 8; }
  std::size_t input_bytes() const { return (input_bits + 7) / 8; }
  std::size_t output_bytes() const { return (output_bits + 7) / 8; }
  bool fixed_input() const { return input_bits != 0; }
  bool keyed() const { return key_bits != 0; }

  /// Throws std::invalid_argument if the spec breaks a family rule.
  void validate() const;
  bool operator==(const FunctionFamilySpec&) const = default;
};

// Named constructors. Weak families are brute-forceable at desk scale.
FunctionFamilySpec weak_owf(unsigned bits);
/// key, input and output all `bits` wide.
FunctionFamilySpec weak_prf(unsigned bits);
/// Variable-length input, output truncated to out_bits.
FunctionFamilySpec truncated_hash(unsigned out_bits, unsigned key_bits = 0, Kind kind = Kind::spr_hash);
FunctionFamilySpec full_hash();
FunctionFamilySpec full_owf();
FunctionFamilySpec full_prf();

/// First output_bits of SHA-256(salt || key || x), right-aligned. The salt is
/// empty for evaluator "sha256" and evaluator_id || 0x00 otherwise.
Bytes eval(const FunctionFamilySpec& spec, ByteView key, ByteView x);

/// Integer helpers for families of at most 64 bits.
std::uint64_t to_u64(ByteView b);
Bytes from_u64(std::uint64_t v, std::size_t nbytes);

/// Same value as eval, for keys, inputs and outputs of at most 32 bits.
std::uint32_t eval_small(const FunctionFamilySpec& spec, std::uint32_t key, std::uint32_t x);

/// Uniform element of width `bits`: one draw when bits <= 63, otherwise one draw
/// per byte with the leading byte narrowed to the leftover bits.
Bytes sample_bits(RandomTape& tape, unsigned bits);
/// Number of draws sample_bits takes for `bits`.
std::size_t sample_draw_count(unsigned bits);
Bytes sample_input(const FunctionFamilySpec& spec, RandomTape& tape);
Bytes sample_key(const FunctionFamilySpec& spec, RandomTape& tape);

/// Output of x -> f_key(x) for every x in the fixed-width domain.
/// Unkeyed tables are built once and shared.
const std::vector<std::uint32_t>& input_table(const FunctionFamilySpec& spec);
std::vector<std::uint32_t> input_table_for_key(const FunctionFamilySpec& spec, ByteView key);

/// Least x with eval(spec, key, x) = y. Refuses full-strength or variable-input families.
std::optional<Bytes> brute_force_invert(const FunctionFamilySpec& spec, ByteView key, ByteView y);
/// Least key with eval(spec, key, x) = y. Refuses full-strength families.
std::optional<Bytes> brute_force_key(const FunctionFamilySpec& spec, ByteView x, ByteView y);

}  // namespace llab::prim
