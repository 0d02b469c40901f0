#include "llab/tree/fixtures.hpp"

#include "llab/ots/fixtures.hpp"
#include "llab/ots/forgery.hpp"

namespace llab::tree {

using game::Abort;
using game::Reply;

game::AdversaryHandle tree_birthday_forger(const TreeParams& p, unsigned tries, unsigned nonce_bits) {
  auto S = make_tree(p);
  const std::string iface = ots::forgery_interface(*S, ots::ForgeryGameParams::many(1));
  return game::make_adversary(
      "tree-birthday", iface, nonce_bits, [S, tries, nonce_bits](RandomTape& tape) {
        const std::uint64_t nonce = tape.bits(nonce_bits);
        struct State {
          Bytes pk;
          bool asked = false;
        };
        auto st = std::make_shared<State>();
        return [S, tries, nonce, st](ByteView msg) -> Reply {
          const TreeParams& p = S->params();
          const Bytes zero(S->message_bytes(), 0);
          try {
            if (!st->asked) {
              st->pk = ots::expect_tagged(msg, 'K');
              st->asked = true;
              return ots::sign_query(zero);
            }
            const TreePublicKey key = S->decode_pk(st->pk);
            const TreeSignature honest = S->decode_sig(ots::expect_tagged(msg, 'G'));
            const PathTriple& top = honest.path.back();
            const Bytes target = S->node_message(key.hash_key, S->node_input(key.masks, 0, top.pk_left, top.pk_right));

            DrbgTape fake_tape(derive_seed(Seed{}, "tree-birthday", nonce));
            TreeMaterial fake = S->generate(fake_tape);
            fake.hash_key = key.hash_key;
            fake.masks = key.masks;
            fake.nodes[3].pk = top.pk_right;
            std::optional<Bytes> root_sig;
            for (unsigned i = 0; i < tries; ++i) {
              ots::KeyPair kp = p.ots->keygen(fake_tape);
              if (kp.pk == top.pk_left) continue;
              fake.nodes[2] = std::move(kp);
              const Bytes m = S->node_message(key.hash_key, S->node_input(key.masks, 0, fake.nodes[2].pk, top.pk_right));
              if (m == target) {
                root_sig = top.sig;
                break;
              }
            }
            if (!root_sig) {
              const Bytes m = S->node_message(key.hash_key, S->node_input(key.masks, 0, fake.nodes[2].pk, top.pk_right));
              root_sig = ots::bruteforce_sign(*p.ots, key.root_pk, m);
              if (!root_sig) return Abort{"root key has no preimage for the forged message"};
            }
            Bytes mstar = zero;
            mstar.back() ^= 1;
            TreeSignature forged = S->sign_at(fake, 0, mstar);
            forged.path.back().sig = *root_sig;
            return ots::forgery_reply(mstar, S->encode_sig(forged));
          } catch (const std::exception& e) {
            return Abort{e.what()};
          }
        };
      });
}

}  // namespace llab::tree
