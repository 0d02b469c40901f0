#include "llab/ots/fixtures.hpp"

#include "llab/primitives/fixtures.hpp"

namespace llab::ots {

using game::Abort;
using game::Reply;

namespace {

Bytes random_message(const SignatureScheme& s, RandomTape& tape) {
  return prim::sample_bits(tape, s.message_bits());
}

Bytes flip_last_bit(Bytes m) {
  m.back() ^= 1;
  return m;
}

/// Two-step forger: optional query, then a final forgery computed by `forge`.
template <typename Forge>
game::SessionFn two_step(const SignatureScheme& s, RandomTape& tape, bool use_query, Forge forge) {
  struct State {
    Bytes pk;
    std::optional<Bytes> query;
  };
  auto st = std::make_shared<State>();
  const SignatureScheme* scheme = &s;
  return [st, scheme, &tape, use_query, forge](ByteView msg) -> Reply {
    try {
      if (!msg.empty() && msg[0] == 'K') {
        st->pk = expect_tagged(msg, 'K');
        if (use_query) {
          st->query = random_message(*scheme, tape);
          return sign_query(*st->query);
        }
        return forge(st->pk, std::optional<std::pair<Bytes, Bytes>>{});
      }
      Bytes sig = expect_tagged(msg, 'G');
      return forge(st->pk, std::optional<std::pair<Bytes, Bytes>>{{*st->query, sig}});
    } catch (const DecodeError& e) {
      return Abort{e.what()};
    }
  };
}

}  // namespace

game::AdversaryHandle lamport_bruteforce_forger(const LamportParams& p, bool use_query) {
  auto scheme = make_lamport(p);
  return game::make_adversary(
      use_query ? "lamport-bruteforce-q" : "lamport-bruteforce",
      forgery_interface(*scheme, ForgeryGameParams::one_time_params()), use_query ? p.message_bits : 0,
      [scheme, use_query](RandomTape& tape) {
        return two_step(*scheme, tape, use_query,
                        [scheme](const Bytes& pk, std::optional<std::pair<Bytes, Bytes>> seen) -> Reply {
                          const auto& p = scheme->params();
                          auto images = scheme->decode_pk(pk);
                          Bytes target(scheme->message_bytes(), 0);
                          std::vector<Bytes> revealed;
                          if (seen) {
                            target = flip_last_bit(seen->first);
                            revealed = scheme->decode_sig(seen->second);
                          }
                          std::vector<Bytes> out;
                          for (unsigned i = 0; i < p.message_bits; ++i) {
                            const unsigned b = message_bit(target, p.message_bits, i);
                            if (seen && message_bit(seen->first, p.message_bits, i) == b) {
                              out.push_back(revealed[i]);
                              continue;
                            }
                            auto x = prim::brute_force_invert(p.owf, {}, images[Lamport::slot(i, b)]);
                            if (!x) return Abort{"no preimage"};
                            out.push_back(*x);
                          }
                          return forgery_reply(target, scheme->encode_sig(out));
                        });
      });
}

game::AdversaryHandle lamport_bruteforce_forger_twin(const LamportParams& p) {
  auto scheme = make_lamport(p);
  return game::make_adversary(
      "lamport-scan", forgery_interface(*scheme, ForgeryGameParams::one_time_params()), 0, [scheme](RandomTape&) {
        return [scheme](ByteView msg) -> Reply {
          const auto& p = scheme->params();
          std::vector<Bytes> images;
          try {
            images = scheme->decode_pk(expect_tagged(msg, 'K'));
          } catch (const DecodeError& e) {
            return Abort{e.what()};
          }
          // Walk the domain downwards so the last hit is the least preimage.
          std::vector<std::optional<Bytes>> found(p.message_bits);
          for (std::uint64_t x = (std::uint64_t{1} << p.owf.input_bits); x-- > 0;) {
            Bytes xb = prim::from_u64(x, p.owf.input_bytes());
            Bytes y = scheme->image(xb);
            for (unsigned i = 0; i < p.message_bits; ++i) {
              if (y == images[Lamport::slot(i, 0)]) found[i] = xb;
            }
          }
          std::vector<Bytes> out;
          for (auto& f : found) {
            if (!f) return Abort{"no preimage"};
            out.push_back(*f);
          }
          return forgery_reply(Bytes(scheme->message_bytes(), 0), scheme->encode_sig(out));
        };
      });
}

game::AdversaryHandle wots_bruteforce_forger(const WotsParams& p, bool use_query) {
  auto scheme = make_wots(p);
  return game::make_adversary(
      use_query ? "wots-bruteforce-q" : "wots-bruteforce",
      forgery_interface(*scheme, ForgeryGameParams::one_time_params()), use_query ? p.message_bits : 0,
      [scheme, use_query](RandomTape& tape) {
        return two_step(*scheme, tape, use_query,
                        [scheme](const Bytes& pk, std::optional<std::pair<Bytes, Bytes>> seen) -> Reply {
                          const auto& p = scheme->params();
                          Wots::Material key = scheme->decode_pk(pk);
                          Bytes target(scheme->message_bytes(), 0);
                          std::vector<unsigned> have;
                          std::vector<Bytes> revealed;
                          if (seen) {
                            target = flip_last_bit(seen->first);
                            have = scheme->digits(seen->first);
                            revealed = scheme->decode_sig(seen->second);
                          }
                          std::vector<unsigned> want = scheme->digits(target);
                          std::vector<Bytes> out;
                          for (std::size_t j = 0; j < want.size(); ++j) {
                            if (seen && want[j] >= have[j]) {
                              out.push_back(scheme->chain(key.x, revealed[j], want[j] - have[j]));
                              continue;
                            }
                            const unsigned steps = p.w - 1 - want[j];
                            std::optional<Bytes> hit;
                            for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.prf.key_bits) && !hit; ++s) {
                              Bytes sb = prim::from_u64(s, p.prf.key_bytes());
                              if (scheme->chain(key.x, sb, steps) == key.chains[j]) hit = sb;
                            }
                            if (!hit) return Abort{"chain end has no preimage"};
                            out.push_back(*hit);
                          }
                          return forgery_reply(target, scheme->encode_sig(out));
                        });
      });
}

std::optional<Bytes> bruteforce_sign(const SignatureScheme& s, ByteView pk, ByteView m) {
  if (const auto* l = dynamic_cast<const Lamport*>(&s)) {
    const auto& p = l->params();
    auto images = l->decode_pk(pk);
    std::vector<Bytes> out;
    for (unsigned i = 0; i < p.message_bits; ++i) {
      auto x = prim::brute_force_invert(p.owf, {}, images[Lamport::slot(i, message_bit(m, p.message_bits, i))]);
      if (!x) return std::nullopt;
      out.push_back(*x);
    }
    return l->encode_sig(out);
  }
  if (const auto* w = dynamic_cast<const Wots*>(&s)) {
    const auto& p = w->params();
    Wots::Material key = w->decode_pk(pk);
    std::vector<unsigned> d = w->digits(m);
    std::vector<Bytes> out;
    for (std::size_t j = 0; j < d.size(); ++j) {
      std::optional<Bytes> hit;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << p.prf.key_bits) && !hit; ++v) {
        Bytes vb = prim::from_u64(v, p.prf.key_bytes());
        if (w->chain(key.x, vb, p.w - 1 - d[j]) == key.chains[j]) hit = vb;
      }
      if (!hit) return std::nullopt;
      out.push_back(*hit);
    }
    return w->encode_sig(out);
  }
  throw std::invalid_argument("bruteforce_sign supports Lamport and W-OTS only");
}

game::AdversaryHandle replay_forger(const SignatureScheme& scheme, const ForgeryGameParams& gp) {
  const std::size_t mb = std::max<std::size_t>(scheme.message_bytes(), 1);
  return game::make_adversary("replay", forgery_interface(scheme, gp), 0, [mb](RandomTape&) {
    auto sent = std::make_shared<bool>(false);
    return [mb, sent](ByteView msg) -> Reply {
      const Bytes m(mb, 0);
      if (!*sent) {
        *sent = true;
        return sign_query(m);
      }
      try {
        return forgery_reply(m, expect_tagged(msg, 'G'));
      } catch (const DecodeError& e) {
        return Abort{e.what()};
      }
    };
  });
}

game::AdversaryHandle greedy_forger(const SignatureScheme& scheme, const ForgeryGameParams& gp) {
  const std::size_t mb = std::max<std::size_t>(scheme.message_bytes(), 1);
  const std::size_t q = gp.max_sign_queries;
  return game::make_adversary("greedy", forgery_interface(scheme, gp), 0, [mb, q](RandomTape&) {
    auto n = std::make_shared<std::size_t>(0);
    return [mb, q, n](ByteView) -> Reply {
      if (*n > q) return Abort{"unexpected answer"};
      Bytes m(mb, 0);
      m.back() = static_cast<std::uint8_t>(*n & 1);
      if (mb > 1) m[mb - 2] = static_cast<std::uint8_t>(*n >> 1);
      ++*n;
      return sign_query(m);
    };
  });
}

}  // namespace llab::ots
