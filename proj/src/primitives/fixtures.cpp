#include "llab/primitives/fixtures.hpp"

#include <map>
#include <stdexcept>

namespace llab::prim {

using game::Abort;
using game::Reply;

game::AdversaryHandle always_abort(const std::string& interface) {
  return game::make_adversary("always-abort", interface, 0, [](RandomTape&) {
    return [](ByteView) -> Reply { return Abort{"gives up"}; };
  });
}

game::AdversaryHandle inv_bruteforce(const FunctionFamilySpec& spec) {
  return game::make_adversary("inv-bruteforce", standard_interface(StandardGameKind::inv, spec), 0,
                              [spec](RandomTape&) {
                                return [spec](ByteView y) -> Reply {
                                  auto x = brute_force_invert(spec, {}, y);
                                  if (!x) return Abort{"no preimage"};
                                  return *x;
                                };
                              });
}

game::AdversaryHandle inv_random_guess(const FunctionFamilySpec& spec) {
  return game::make_adversary("inv-random-guess", standard_interface(StandardGameKind::inv, spec), spec.input_bits,
                              [spec](RandomTape& tape) {
                                return [spec, &tape](ByteView) -> Reply { return sample_input(spec, tape); };
                              });
}

game::AdversaryHandle kow_bruteforce(const FunctionFamilySpec& spec) {
  return game::make_adversary("kow-bruteforce", standard_interface(StandardGameKind::kow, spec), 0,
                              [spec](RandomTape&) {
                                return [spec](ByteView m) -> Reply {
                                  ByteView x = m.first(spec.input_bytes());
                                  ByteView y = m.subspan(spec.input_bytes());
                                  auto k = brute_force_key(spec, x, y);
                                  if (!k) return Abort{"no key"};
                                  return *k;
                                };
                              });
}

game::AdversaryHandle spr_replay(const FunctionFamilySpec& spec, const StandardGameOptions& opts) {
  return game::make_adversary("spr-replay", standard_interface(StandardGameKind::spr, spec, opts), 0,
                              [spec](RandomTape&) {
                                return [spec](ByteView m) -> Reply {
                                  ByteView x = m.subspan(spec.key_bytes());
                                  return Bytes(x.begin(), x.end());
                                };
                              });
}

game::AdversaryHandle col_birthday(const FunctionFamilySpec& spec) {
  return game::make_adversary(
      "col-birthday", standard_interface(StandardGameKind::col, spec), 0, [spec](RandomTape&) {
        return [spec](ByteView key) -> Reply {
          if (spec.fixed_input()) throw std::invalid_argument("col-birthday expects a variable-input hash");
          const std::uint32_t tries = 1u << (spec.output_bits / 2 + 4);
          std::map<Bytes, Bytes> seen;
          for (std::uint32_t i = 0; i < tries; ++i) {
            Bytes x = from_u64(i, 4);
            Bytes h = eval(spec, key, x);
            auto [it, fresh] = seen.emplace(h, x);
            if (!fresh) {
              ByteWriter w;
              w.put_blob(it->second).put_blob(x);
              return w.take();
            }
          }
          return Abort{"no collision found"};
        };
      });
}

game::AdversaryHandle prf_constant(const FunctionFamilySpec& spec, const StandardGameOptions& opts, std::uint8_t bit) {
  return game::make_adversary("prf-constant-" + std::to_string(bit),
                              standard_interface(StandardGameKind::prf, spec, opts), 0, [bit](RandomTape&) {
                                return [bit](ByteView) -> Reply { return Bytes{'B', bit}; };
                              });
}

game::AdversaryHandle prf_bruteforce(const FunctionFamilySpec& spec, const StandardGameOptions& opts) {
  if (opts.max_queries < 2) throw std::invalid_argument("prf-bruteforce needs two queries");
  return game::make_adversary(
      "prf-bruteforce", standard_interface(StandardGameKind::prf, spec, opts), 0, [spec](RandomTape&) {
        struct State {
          int step = 0;
          Bytes y0;
        };
        auto st = std::make_shared<State>();
        return [spec, st](ByteView m) -> Reply {
          const Bytes x0 = from_u64(0, spec.input_bytes());
          const Bytes x1 = from_u64(1, spec.input_bytes());
          if (st->step == 0) {
            st->step = 1;
            return concat(Bytes{'Q'}, x0);
          }
          if (st->step == 1) {
            st->step = 2;
            st->y0 = Bytes(m.begin() + 1, m.end());
            return concat(Bytes{'Q'}, x1);
          }
          // Real iff some key explains both answers.
          Bytes y1(m.begin() + 1, m.end());
          for (std::uint64_t k = 0; k < (std::uint64_t{1} << spec.key_bits); ++k) {
            Bytes kb = from_u64(k, spec.key_bytes());
            if (eval(spec, kb, x0) == st->y0 && eval(spec, kb, x1) == y1) return Bytes{'B', 0};
          }
          return Bytes{'B', 1};
        };
      });
}

TdpKeyPair factor_tdp(const TdpPublicKey& pk) {
  if (pk.n > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::invalid_argument("modulus too large");
  const auto n = pk.n.convert_to<std::uint64_t>();
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return tdp_from_primes(BigInt(f), BigInt(n / f), pk.e);
  }
  throw std::invalid_argument("modulus is prime");
}

game::AdversaryHandle tdp_bruteforce(unsigned modulus_bits) {
  return game::make_adversary("tdp-bruteforce", tdp_interface(modulus_bits), 0, [](RandomTape&) {
    return [](ByteView m) -> Reply {
      ByteReader r(m);
      TdpPublicKey pk;
      pk.n = bytes_to_int(r.blob());
      pk.e = bytes_to_int(r.blob());
      BigInt y = bytes_to_int(r.blob());
      TdpKeyPair kp = factor_tdp(pk);
      ByteWriter w;
      w.put_blob(int_to_bytes(tdp_invert(kp.sk, y), byte_length(pk.n)));
      return w.take();
    };
  });
}

}  // namespace llab::prim
