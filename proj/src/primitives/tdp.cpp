#include "llab/primitives/tdp.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <random>
#include <stdexcept>

namespace llab::prim {

namespace mp = boost::multiprecision;

namespace {

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n < (BigInt(1) << 32)) {
    const auto v = n.convert_to<std::uint64_t>();
    for (std::uint64_t f = 3; f * f <= v; f += 2) {
      if (v % f == 0) return false;
    }
    return true;
  }
  // Witnesses are derived from n itself so the answer is a pure function of n.
  std::mt19937_64 rng(static_cast<std::uint64_t>(n & 0xffffffffffffffffULL));
  return mp::miller_rabin_test(n, 40, rng);
}

BigInt random_prime(RandomTape& tape, unsigned bits) {
  for (;;) {
    BigInt c = 0;
    for (unsigned i = 0; i < bits; ++i) c = (c << 1) | BigInt(tape.coin() ? 1 : 0);
    c |= BigInt(3) << (bits - 2);
    c |= 1;
    if (is_prime(c)) return c;
  }
}

BigInt gcd(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  if (mod < (BigInt(1) << 63) && exp < (BigInt(1) << 63) && base >= 0) {
    return BigInt(powmod_u64(static_cast<std::uint64_t>(base % mod), exp.convert_to<std::uint64_t>(),
                             mod.convert_to<std::uint64_t>()));
  }
  return mp::powm(base, exp, mod);
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = a % m, r = m, old_s = 1, s = 0;
  if (old_r < 0) old_r += m;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("value is not invertible");
  old_s %= m;
  if (old_s < 0) old_s += m;
  return old_s;
}

TdpKeyPair tdp_from_primes(const BigInt& p, const BigInt& q, const BigInt& e) {
  if (p == q || !is_prime(p) || !is_prime(q)) throw std::invalid_argument("need two distinct primes");
  const BigInt phi = (p - 1) * (q - 1);
  if (e <= 1 || e >= phi || gcd(e, phi) != 1) throw std::invalid_argument("e must be a unit modulo phi(N)");
  TdpKeyPair kp;
  kp.pk.n = p * q;
  kp.pk.e = e;
  kp.pk.bits = static_cast<unsigned>(mp::msb(kp.pk.n) + 1);
  kp.sk.n = kp.pk.n;
  kp.sk.d = mod_inverse(e, phi);
  kp.sk.p = p;
  kp.sk.q = q;
  return kp;
}

TdpKeyPair tdp_keygen(const Seed& seed, unsigned modulus_bits) {
  if (modulus_bits < 10 || modulus_bits > 2048) throw std::invalid_argument("modulus_bits must be in [10, 2048]");
  DrbgTape tape(derive_seed(seed, "tdp-keygen", modulus_bits));
  const unsigned pb = modulus_bits / 2;
  const unsigned qb = modulus_bits - pb;
  for (;;) {
    BigInt p = random_prime(tape, pb);
    BigInt q = random_prime(tape, qb);
    if (p == q) continue;
    const BigInt phi = (p - 1) * (q - 1);
    BigInt e = 65537;
    if (!(e < phi && gcd(e, phi) == 1)) {
      e = 3;
      while (gcd(e, phi) != 1) e += 2;
      if (e >= phi) continue;
    }
    return tdp_from_primes(p, q, e);
  }
}

bool in_units(const BigInt& n, const BigInt& x) { return x >= 1 && x < n && gcd(x, n) == 1; }

BigInt tdp_forward(const TdpPublicKey& pk, const BigInt& x) {
  if (!in_units(pk.n, x)) throw std::domain_error("input is not in Z_N*");
  return mod_pow(x, pk.e, pk.n);
}

BigInt tdp_invert(const TdpSecretKey& sk, const BigInt& y) {
  if (!in_units(sk.n, y)) throw std::domain_error("input is not in Z_N*");
  return mod_pow(y, sk.d, sk.n);
}

BigInt sample_unit(const BigInt& n, RandomTape& tape) {
  if (n > BigInt(std::numeric_limits<std::uint64_t>::max())) throw std::invalid_argument("modulus too large to sample");
  const auto nv = n.convert_to<std::uint64_t>();
  for (;;) {
    BigInt x(tape.draw(nv));
    if (in_units(n, x)) return x;
  }
}

std::size_t byte_length(const BigInt& v) { return v == 0 ? 1 : (mp::msb(v) + 8) / 8; }

Bytes int_to_bytes(const BigInt& v, std::size_t len) {
  if (v < 0) throw std::invalid_argument("negative value");
  Bytes raw;
  mp::export_bits(v, std::back_inserter(raw), 8);
  while (raw.size() > 1 && raw.front() == 0) raw.erase(raw.begin());
  if (v == 0) raw = {0};
  if (raw.size() > len) {
    if (v == 0 && len == 0) return {};
    throw std::invalid_argument("value does not fit in " + std::to_string(len) + " bytes");
  }
  Bytes out(len - raw.size(), 0);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

BigInt bytes_to_int(ByteView b) {
  BigInt v = 0;
  if (b.empty()) return v;
  mp::import_bits(v, b.begin(), b.end(), 8);
  return v;
}

}  // namespace llab::prim
