#pragma once

#include "llab/bytes.hpp"
#include "llab/numeric.hpp"
#include "llab/seed.hpp"
#include "llab/tape.hpp"

namespace llab::prim {

/// RSA-style trapdoor permutation x -> x^e mod N on Z_N*.
struct TdpPublicKey {
  BigInt n;
  BigInt e;
  unsigned bits = 0;
  bool operator==(const TdpPublicKey&) const = default;
};

struct TdpSecretKey {
  BigInt n;
  BigInt d;
  BigInt p;
  BigInt q;
  bool operator==(const TdpSecretKey&) const = default;
};

struct TdpKeyPair {
  TdpPublicKey pk;
  TdpSecretKey sk;
};

/// Deterministic in (seed, modulus_bits); modulus_bits in [10, 2048].
/// Both primes have their top two bits set so N has exactly modulus_bits bits.
/// e = 65537 when that is coprime to phi(N) and below it, else the least odd coprime e >= 3.
TdpKeyPair tdp_keygen(const Seed& seed, unsigned modulus_bits);
/// Throws std::invalid_argument unless p != q are prime and gcd(e, phi) = 1.
TdpKeyPair tdp_from_primes(const BigInt& p, const BigInt& q, const BigInt& e);

bool in_units(const BigInt& n, const BigInt& x);
/// Throws std::domain_error if x is not in Z_N*.
BigInt tdp_forward(const TdpPublicKey& pk, const BigInt& x);
BigInt tdp_invert(const TdpSecretKey& sk, const BigInt& y);

/// Uniform element of Z_N* by rejection; N must fit in 64 bits.
BigInt sample_unit(const BigInt& n, RandomTape& tape);

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod);
/// Inverse of a mod m; throws std::domain_error if none exists.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Big-endian, left-padded to `len` bytes. Throws if the value does not fit.
Bytes int_to_bytes(const BigInt& v, std::size_t len);
BigInt bytes_to_int(ByteView b);
std::size_t byte_length(const BigInt& v);

}  // namespace llab::prim
