#pragma once

// Exact integer and multiplicative-function arithmetic shared by all
// modules: prime sieve, phi/mu/factorisation, multiplicative order,
// deterministic 64-bit primality, and a partial-sum zeta with a rigorous
// integral tail bound.

#include <cstdint>
#include <vector>

#include "linnik/interval.hpp"

namespace linnik {

struct PrimeTable {
  uint64_t limit = 0;
  std::vector<uint64_t> primes;  // ascending, exactly the primes <= limit

  bool contains(uint64_t p) const;
  // Primes p with lo < p < hi (open interval), as index range into primes.
  std::pair<size_t, size_t> open_range(uint64_t lo, uint64_t hi) const;
};

// Sieve of Eratosthenes. limit must be in [2, memory_cap].
PrimeTable sieve_primes(uint64_t limit, uint64_t memory_cap = (uint64_t)1 << 31);

struct MultiplicativeBasics {
  uint64_t phi;
  int mu;                         // 0 when not squarefree
  std::vector<uint64_t> factors;  // prime factors with multiplicity, ascending
};

MultiplicativeBasics multiplicative_basics(uint64_t n);  // n >= 1

// Least t >= 1 with base^t == 1 (mod modulus); modulus odd and > 1,
// gcd(base, modulus) must be 1. Computed through the factorisation of
// phi(modulus).
uint64_t multiplicative_order(uint64_t base, uint64_t modulus);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(uint64_t n);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t m);

// zeta(s) for s > 1 via partial sum plus the integral tail bracket
//   (M+1)^(1-s)/(s-1) <= sum_{n>M} n^-s <= M^(1-s)/(s-1).
// The returned enclosure has width <= precision (plus endpoint rounding).
Interval zeta_interval(double s, double precision);

// n^-s enclosure, with exact-power fast paths for integral and
// half-integral s.
Interval pow_neg_s(uint64_t n, double s);

}  // namespace linnik
