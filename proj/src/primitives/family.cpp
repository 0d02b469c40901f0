#include "llab/primitives/family.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "llab/sha256.hpp"
#include "llab/simd/kernels.hpp"

namespace llab::prim {

namespace {

constexpr unsigned kWeakMaxBits = 24;

void check_width(ByteView v, unsigned bits, const char* what) {
  const std::size_t n = (bits + 7) / 8;
  if (v.size() != n) {
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(n) + " bytes, got " +
                                std::to_string(v.size()));
  }
  if (bits % 8 != 0 && n > 0 && (v[0] >> (bits % 8)) != 0) {
    throw std::invalid_argument(std::string(what) + " has bits above its declared width");
  }
}

Bytes truncate_digest(const Digest& d, unsigned out_bits) {
  const std::size_t n = (out_bits + 7) / 8;
  const unsigned shift = static_cast<unsigned>(8 * n - out_bits);
  Bytes out(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n));
  if (shift != 0) {
    // Right-align the leading out_bits of the digest.
    for (std::size_t i = n; i-- > 0;) {
      unsigned hi = (i > 0) ? static_cast<unsigned>(out[i - 1]) << (8 - shift) : 0;
      out[i] = static_cast<std::uint8_t>(((out[i] >> shift) | hi) & 0xff);
    }
  }
  return out;
}

Sha256 start(const FunctionFamilySpec& spec) {
  Sha256 h;
  if (spec.evaluator_id != "sha256") {
    h.update(spec.evaluator_id);
    const std::uint8_t zero = 0;
    h.update(ByteView(&zero, 1));
  }
  return h;
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::owf: return "owf";
    case Kind::prf: return "prf";
    case Kind::spr_hash: return "spr_hash";
    case Kind::generic_hash: return "generic_hash";
  }
  return "unknown";
}

void FunctionFamilySpec::validate() const {
  // A 0-bit weak family is the constant function; it is allowed as a degenerate test case.
  if ((output_bits == 0 && strength != Strength::weak) || output_bits > 256) throw std::invalid_argument(evaluator_id + ": output_bits out of range");
  if (evaluator_id.empty()) throw std::invalid_argument("evaluator_id must not be empty");
  if (kind == Kind::prf && key_bits == 0) throw std::invalid_argument(evaluator_id + ": a PRF needs a key");
  if (strength == Strength::weak) {
    // Variable-input weak hashes are fine: only the output width bounds the brute-force work.
    if (output_bits > kWeakMaxBits || key_bits > kWeakMaxBits || input_bits > kWeakMaxBits) {
      throw std::invalid_argument(evaluator_id + ": weak families are limited to 24-bit keys, inputs and outputs");
    }
  } else if (output_bits != 256) {
    throw std::invalid_argument(evaluator_id + ": full-strength families use the whole 256-bit digest");
  }
}

FunctionFamilySpec weak_owf(unsigned bits) {
  FunctionFamilySpec s{Kind::owf, 0, bits, bits, Strength::weak, "owf-w" + std::to_string(bits)};
  s.validate();
  return s;
}

FunctionFamilySpec weak_prf(unsigned bits) {
  FunctionFamilySpec s{Kind::prf, bits, bits, bits, Strength::weak, "prf-w" + std::to_string(bits)};
  s.validate();
  return s;
}

FunctionFamilySpec truncated_hash(unsigned out_bits, unsigned key_bits, Kind kind) {
  FunctionFamilySpec s{kind,
                       key_bits,
                       0,
                       out_bits,
                       out_bits <= kWeakMaxBits ? Strength::weak : Strength::full,
                       "hash-t" + std::to_string(out_bits) + "-k" + std::to_string(key_bits)};
  s.validate();
  return s;
}

FunctionFamilySpec full_hash() { return {Kind::generic_hash, 0, 0, 256, Strength::full, "sha256"}; }
FunctionFamilySpec full_owf() { return {Kind::owf, 0, 256, 256, Strength::full, "owf-sha256"}; }
FunctionFamilySpec full_prf() { return {Kind::prf, 256, 256, 256, Strength::full, "prf-sha256"}; }

Bytes eval(const FunctionFamilySpec& spec, ByteView key, ByteView x) {
  check_width(key, spec.key_bits, "key");
  if (spec.fixed_input()) check_width(x, spec.input_bits, "input");
  Sha256 h = start(spec);
  h.update(key).update(x);
  return truncate_digest(h.finish(), spec.output_bits);
}

std::uint64_t to_u64(ByteView b) {
  if (b.size() > 8) throw std::invalid_argument("value wider than 64 bits");
  std::uint64_t v = 0;
  for (std::uint8_t c : b) v = (v << 8) | c;
  return v;
}

Bytes from_u64(std::uint64_t v, std::size_t nbytes) {
  Bytes out(nbytes);
  for (std::size_t i = nbytes; i-- > 0;) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

std::uint32_t eval_small(const FunctionFamilySpec& spec, std::uint32_t key, std::uint32_t x) {
  if (spec.output_bits > 32 || spec.key_bits > 32 || spec.input_bits > 32 || !spec.fixed_input()) {
    throw std::invalid_argument("eval_small needs a fixed-input family of at most 32 bits");
  }
  std::uint8_t buf[8];
  const std::size_t kb = spec.key_bytes();
  const std::size_t xb = spec.input_bytes();
  for (std::size_t i = 0; i < kb; ++i) buf[i] = static_cast<std::uint8_t>(key >> (8 * (kb - 1 - i)));
  for (std::size_t i = 0; i < xb; ++i) buf[kb + i] = static_cast<std::uint8_t>(x >> (8 * (xb - 1 - i)));
  Sha256 h = start(spec);
  h.update(ByteView(buf, kb + xb));
  Digest d = h.finish();
  if (spec.output_bits == 0) return 0;
  std::uint64_t top = 0;
  for (int i = 0; i < 8; ++i) top = (top << 8) | d[i];
  return static_cast<std::uint32_t>(top >> (64 - spec.output_bits));
}

Bytes sample_bits(RandomTape& tape, unsigned bits) {
  const std::size_t n = (bits + 7) / 8;
  if (bits <= 63) return from_u64(tape.bits(bits), n);
  Bytes out(n);
  const unsigned lead = bits - 8 * static_cast<unsigned>(n - 1);
  out[0] = static_cast<std::uint8_t>(tape.bits(lead));
  for (std::size_t i = 1; i < n; ++i) out[i] = static_cast<std::uint8_t>(tape.draw(256));
  return out;
}

std::size_t sample_draw_count(unsigned bits) { return bits <= 63 ? 1 : (bits + 7) / 8; }

Bytes sample_input(const FunctionFamilySpec& spec, RandomTape& tape) {
  if (!spec.fixed_input()) throw std::invalid_argument(spec.evaluator_id + ": variable-input family has no domain");
  return sample_bits(tape, spec.input_bits);
}

Bytes sample_key(const FunctionFamilySpec& spec, RandomTape& tape) { return sample_bits(tape, spec.key_bits); }

namespace {

void require_small_domain(const FunctionFamilySpec& spec) {
  if (spec.strength != Strength::weak) {
    throw std::invalid_argument(spec.evaluator_id + ": refusing to brute-force a full-strength family");
  }
  if (!spec.fixed_input()) {
    throw std::invalid_argument(spec.evaluator_id + ": brute force needs a fixed-width input domain");
  }
}

std::vector<std::uint32_t> build_table(const FunctionFamilySpec& spec, std::uint32_t key) {
  std::vector<std::uint32_t> t(std::size_t{1} << spec.input_bits);
  for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = eval_small(spec, key, x);
  return t;
}

}  // namespace

const std::vector<std::uint32_t>& input_table(const FunctionFamilySpec& spec) {
  require_small_domain(spec);
  if (spec.keyed()) throw std::invalid_argument(spec.evaluator_id + ": keyed family, use input_table_for_key");
  struct Entry {
    std::once_flag once;
    std::vector<std::uint32_t> table;
  };
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Entry>> cache;
  const std::string key = spec.evaluator_id + "/" + std::to_string(spec.input_bits) + "/" +
                          std::to_string(spec.output_bits) + "/" + kind_name(spec.kind);
  Entry* e;
  {
    std::lock_guard lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<Entry>();
    e = slot.get();
  }
  std::call_once(e->once, [&] { e->table = build_table(spec, 0); });
  return e->table;
}

std::vector<std::uint32_t> input_table_for_key(const FunctionFamilySpec& spec, ByteView key) {
  require_small_domain(spec);
  check_width(key, spec.key_bits, "key");
  return build_table(spec, static_cast<std::uint32_t>(to_u64(key)));
}

std::optional<Bytes> brute_force_invert(const FunctionFamilySpec& spec, ByteView key, ByteView y) {
  require_small_domain(spec);
  check_width(y, spec.output_bits, "output");
  const auto target = static_cast<std::uint32_t>(to_u64(y));
  std::ptrdiff_t idx;
  if (spec.keyed()) {
    idx = simd::find_first_eq_u32(input_table_for_key(spec, key), target);
  } else {
    check_width(key, 0, "key");
    idx = simd::find_first_eq_u32(input_table(spec), target);
  }
  if (idx < 0) return std::nullopt;
  return from_u64(static_cast<std::uint64_t>(idx), spec.input_bytes());
}

std::optional<Bytes> brute_force_key(const FunctionFamilySpec& spec, ByteView x, ByteView y) {
  if (spec.strength != Strength::weak) {
    throw std::invalid_argument(spec.evaluator_id + ": refusing to brute-force a full-strength family");
  }
  if (!spec.keyed()) throw std::invalid_argument(spec.evaluator_id + ": family has no key");
  check_width(y, spec.output_bits, "output");
  if (spec.fixed_input() && spec.input_bits <= 32) {
    check_width(x, spec.input_bits, "input");
    const auto xv = static_cast<std::uint32_t>(to_u64(x));
    const auto yv = static_cast<std::uint32_t>(to_u64(y));
    for (std::uint32_t k = 0; k < (std::uint32_t{1} << spec.key_bits); ++k) {
      if (eval_small(spec, k, xv) == yv) return from_u64(k, spec.key_bytes());
    }
    return std::nullopt;
  }
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << spec.key_bits); ++k) {
    Bytes kb = from_u64(k, spec.key_bytes());
    if (eval(spec, kb, x) == Bytes(y.begin(), y.end())) return kb;
  }
  return std::nullopt;
}

}  // namespace llab::prim
