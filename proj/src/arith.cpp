#include "linnik/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace linnik {

bool PrimeTable::contains(uint64_t p) const {
  return std::binary_search(primes.begin(), primes.end(), p);
}

std::pair<size_t, size_t> PrimeTable::open_range(uint64_t lo, uint64_t hi) const {
  auto b = std::upper_bound(primes.begin(), primes.end(), lo);
  auto e = std::lower_bound(primes.begin(), primes.end(), hi);
  return {(size_t)(b - primes.begin()), (size_t)(e - primes.begin())};
}

PrimeTable sieve_primes(uint64_t limit, uint64_t memory_cap) {
  if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
  if (limit > memory_cap) {
    throw std::invalid_argument("sieve_primes: limit " + std::to_string(limit) +
                                " exceeds memory cap " + std::to_string(memory_cap));
  }
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i * i <= limit; ++i) {
    if (!composite[i]) {
      for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
  }
  PrimeTable t;
  t.limit = limit;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) t.primes.push_back(i);
  }
  return t;
}

MultiplicativeBasics multiplicative_basics(uint64_t n) {
  if (n == 0) throw std::invalid_argument("multiplicative_basics: n must be >= 1");
  MultiplicativeBasics out{1, 1, {}};
  uint64_t m = n;
  for (uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
        out.factors.push_back(p);
      }
      out.phi *= (p - 1);
      for (unsigned i = 1; i < e; ++i) out.phi *= p;
      out.mu = (e > 1) ? 0 : -out.mu;
    }
  }
  if (m > 1) {
    out.factors.push_back(m);
    out.phi *= (m - 1);
    out.mu = -out.mu;
  }
  return out;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)(((unsigned __int128)a * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return r;
}

uint64_t multiplicative_order(uint64_t base, uint64_t modulus) {
  if (modulus < 3 || modulus % 2 == 0) {
    throw std::invalid_argument("multiplicative_order: modulus must be odd and > 1");
  }
  if (std::gcd(base % modulus, modulus) != 1) {
    throw std::invalid_argument("multiplicative_order: base not coprime to modulus");
  }
  const MultiplicativeBasics mb = multiplicative_basics(modulus);
  uint64_t order = mb.phi;
  const MultiplicativeBasics pf = multiplicative_basics(mb.phi);
  std::vector<uint64_t> distinct;
  for (uint64_t p : pf.factors) {
    if (distinct.empty() || distinct.back() != p) distinct.push_back(p);
  }
  for (uint64_t p : distinct) {
    while (order % p == 0 && powmod_u64(base, order / p, modulus) == 1) order /= p;
  }
  return order;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // deterministic witness set for n < 3.3e24, ample for 64 bits
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Interval pow_neg_s(uint64_t n, double s) {
  const Interval ni = Interval::exact_u64(n);
  if (s == std::floor(s) && s >= 1 && s <= 62) {
    return ni.pow_si((long)s).recip();
  }
  const double two_s = 2 * s;
  if (two_s == std::floor(two_s) && two_s >= 2 && two_s <= 124) {
    const long k = (long)std::floor(s);  // s = k + 1/2
    return (ni.pow_si(k) * ni.sqrt()).recip();
  }
  return ni.pow(Interval::exact_double(s)).recip();
}

Interval zeta_interval(double s, double precision) {
  if (!(s > 1)) throw std::invalid_argument("zeta_interval: s must be > 1");
  if (!(precision > 0)) throw std::invalid_argument("zeta_interval: precision must be > 0");
  // Choose M so the tail bracket width M^(1-s)/(s-1) - (M+1)^(1-s)/(s-1),
  // which is below M^-s, is within the requested precision.
  double m_est = std::pow(1.0 / precision, 1.0 / s);
  if (!(m_est < 5e7)) {
    throw std::invalid_argument("zeta_interval: requested precision needs too many terms");
  }
  uint64_t M = (uint64_t)std::llround(std::ceil(m_est)) + 2;
  M = std::max<uint64_t>(M, 16);

  Interval partial;
  for (uint64_t n = 1; n <= M; ++n) partial += pow_neg_s(n, s);

  const Interval s_i = Interval::exact_double(s);
  const Interval s_minus_1 = s_i.sub_ll(1);
  // integral bracket for the tail over n > M
  const Interval tail_hi =
      Interval::exact_u64(M).pow(Interval::exact(1) - s_i) / s_minus_1;
  const Interval tail_lo =
      Interval::exact_u64(M + 1).pow(Interval::exact(1) - s_i) / s_minus_1;
  return Interval::span(partial + tail_lo, partial + tail_hi);
}

}  // namespace linnik
