#ifndef HRZ_MODARITH_HPP
#define HRZ_MODARITH_HPP

#include <cstdint>

// 64-bit modular arithmetic helpers for prime moduli p < 2^62.

namespace hrz::mod {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);

// Inverse of a mod p, p prime, a != 0 mod p.
uint64_t invmod(uint64_t a, uint64_t p);

// Legendre symbol for odd prime p: +1, 0 or -1.
int legendre(uint64_t a, uint64_t p);

// Square root mod odd prime p (Tonelli-Shanks); requires legendre(a,p) != -1.
// Deterministic: uses the smallest quadratic non-residue.
uint64_t sqrtmod(uint64_t a, uint64_t p);

// floor(sqrt(n)) on 64-bit integers, exact.
uint64_t isqrt(uint64_t n);

bool is_prime_u64(uint64_t n);

// Factor n into prime powers; out receives distinct prime factors.
// Trial division plus Pollard rho for the large cofactor.
void prime_factors(uint64_t n, uint64_t* out, int* count);

}  // namespace hrz::mod

#endif
