#include "llab/fdh/fixtures.hpp"

#include <cmath>
#include <map>

#include "llab/primitives/fixtures.hpp"

namespace llab::fdh {

using game::Abort;
using game::Reply;

namespace {

Bytes sigma_bytes(const prim::TdpKeyPair& kp, const BigInt& y) {
  return prim::int_to_bytes(prim::tdp_invert(kp.sk, y), prim::byte_length(kp.pk.n));
}

}  // namespace

game::AdversaryHandle fdh_bruteforce_forger(const RoGameParams& p, std::size_t hash_queries, std::size_t sign_queries) {
  if (hash_queries < 1) throw std::invalid_argument("the forger needs at least one hash query");
  const double bits = std::log2(static_cast<double>(hash_queries)) + 56.0 * static_cast<double>(hash_queries);
  return game::make_adversary(
      "fdh-bruteforce", ro_forgery_interface(p), bits, [p, hash_queries, sign_queries](RandomTape& tape) {
        struct State {
          std::vector<Bytes> msgs;
          std::vector<BigInt> values;
          std::size_t target = 0;
          std::size_t signs = 0;
          prim::TdpKeyPair kp;
        };
        auto st = std::make_shared<State>();
        for (std::size_t i = 0; i < hash_queries; ++i) {
          Bytes m{static_cast<std::uint8_t>(i)};
          Bytes r = tape.bytes(7);
          m.insert(m.end(), r.begin(), r.end());
          st->msgs.push_back(std::move(m));
        }
        st->target = tape.draw(hash_queries);
        return [p, sign_queries, st](ByteView msg) -> Reply {
          try {
            if (!msg.empty() && msg[0] == 'K') {
              st->kp = prim::factor_tdp(parse_key_message(msg, p.modulus_bits));
              return hash_query(st->msgs[0]);
            }
            if (!msg.empty() && msg[0] == 'h') {
              st->values.push_back(parse_value(msg, 'h'));
            }
            if (st->values.size() < st->msgs.size()) return hash_query(st->msgs[st->values.size()]);
            if (st->signs < sign_queries) {
              Bytes m{0xff, static_cast<std::uint8_t>(st->signs++)};
              return sign_query(m);
            }
            return forgery_reply(st->msgs[st->target], sigma_bytes(st->kp, st->values[st->target]));
          } catch (const std::exception& e) {
            return Abort{e.what()};
          }
        };
      });
}

game::AdversaryHandle fdh_sc_probe_forger(const RoGameParams& p, std::size_t probes, bool pick_repeated) {
  return game::make_adversary(
      pick_repeated ? "fdh-probe-repeated" : "fdh-probe-unique", ro_forgery_interface(p), 0,
      [p, probes, pick_repeated](RandomTape&) {
        struct State {
          std::vector<BigInt> values;
          prim::TdpKeyPair kp;
        };
        auto st = std::make_shared<State>();
        auto probe = [](std::size_t i) { return Bytes{0xa0, static_cast<std::uint8_t>(i >> 8), static_cast<std::uint8_t>(i)}; };
        return [p, probes, pick_repeated, st, probe](ByteView msg) -> Reply {
          try {
            if (!msg.empty() && msg[0] == 'K') {
              st->kp = prim::factor_tdp(parse_key_message(msg, p.modulus_bits));
              return hash_query(probe(0));
            }
            st->values.push_back(parse_value(msg, 'h'));
            if (st->values.size() < probes) return hash_query(probe(st->values.size()));
            std::map<BigInt, std::size_t> count;
            for (const auto& v : st->values) ++count[v];
            for (std::size_t i = 0; i < probes; ++i) {
              const bool repeated = count[st->values[i]] > 1;
              if (repeated == pick_repeated) return forgery_reply(probe(i), sigma_bytes(st->kp, st->values[i]));
            }
            return Abort{"no probe of the wanted kind"};
          } catch (const std::exception& e) {
            return Abort{e.what()};
          }
        };
      });
}

}  // namespace llab::fdh
