#define OPENSSL_SUPPRESS_DEPRECATED
#include "llab/sha256.hpp"

#include <openssl/sha.h>

#include <cstring>

namespace llab {

static_assert(sizeof(SHA256_CTX) <= 112, "SHA256_CTX does not fit the inline state buffer");

namespace {
SHA256_CTX* ctx(std::array<std::uint8_t, 112>& s) { return reinterpret_cast<SHA256_CTX*>(s.data()); }
}  // namespace

Sha256::Sha256() { SHA256_Init(ctx(state_)); }

Sha256& Sha256::update(ByteView data) {
  SHA256_Update(ctx(state_), data.data(), data.size());
  return *this;
}

Sha256& Sha256::update(std::string_view s) {
  SHA256_Update(ctx(state_), s.data(), s.size());
  return *this;
}

Digest Sha256::finish() {
  Digest d;
  SHA256_Final(d.data(), ctx(state_));
  return d;
}

Digest sha256(ByteView data) {
  Digest d;
  SHA256(data.data(), data.size(), d.data());
  return d;
}

}  // namespace llab
