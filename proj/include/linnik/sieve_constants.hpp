#pragma once

// The sieve-constant chain: cubic exponential sums S(q,a), C(q,a), the
// T_d(q) values they feed, Weil-bound envelopes, the M1/M2 prefactors,
// zeta-ratio tail products and the upper-bound constants they certify.

#include <cstdint>
#include <vector>

#include "linnik/arith.hpp"
#include "linnik/interval.hpp"

namespace linnik::sievec {

struct CubicSumTable {
  int64_t q = 0;
  std::vector<CInterval> S;  // S[a-1] = sum_{m=1..q} e(a m^3 / q), a = 1..q
  std::vector<CInterval> C;  // C[a-1] = sum over reduced residues
};

CubicSumTable cubic_sums(int64_t q);  // q <= 1e4

struct TValues {
  int64_t q = 0;
  Interval T1;  // T_1(q)
  Interval Tq;  // T_q(q); only populated for prime q
};

// T_d(q) = sum_{(a,q)=1} S(q, a d^3) C(q,a)^3 conj(C(q,a))^4 / (q phi(q)^7)
// for d = 1 and (prime q) d = q. Values are real; the a <-> q-a pairing is
// used and the imaginary residual asserted tiny.
TValues T_values(int64_t q);

// Weil-bound envelopes for prime p:
//   |T_p(p)| <= (2 sqrt p + 1)^5 (2p+1) / (p-1)^6
//   |T_1(p)| <= 2 (2 sqrt p + 1)^5 (2p+1) / (sqrt p (p-1)^6)
Interval envelope_Tp(int64_t p);
Interval envelope_T1(int64_t p);

// Printed envelope for (T_p(p)-T_1(p)) / ((p-1)(1+T_1(p))), p >= 13:
//   1.2304 (2 sqrt p + 1)^5 (2p+1)(2 + sqrt p) / ((p-1)^7 sqrt p).
// Also certifies the denominator condition 1 - envelope_T1(p) > 0.
Interval ratio_envelope(int64_t p);

// M1 = 1.2304 (1 + 2/sqrt 4000)(2 + 1/sqrt 4000)^5 (2 + 1/4000)(1 - 1/4000)^-7
// M2 = 2 (2 + 1/sqrt 4000)^5 (2 + 1/4000)(1 - 1/4000)^-6
std::pair<Interval, Interval> M_constants();

// prod over primes in [lo, hi] of (1 - (T_p(p)-T_1(p)) / ((p-1)(1+T_1(p))))
// with both T values computed exactly.
Interval product_exact_T(int64_t lo, int64_t hi, const PrimeTable& pt,
                         unsigned workers = 1);

// prod over primes in (lo, hi] of (1 + ratio_envelope(p)).
Interval product_ratio_envelope(int64_t lo, int64_t hi, const PrimeTable& pt);

// prod over primes in (lo, hi] of (1 + envelope_T1(p)).
Interval product_T1_envelope(int64_t lo, int64_t hi, const PrimeTable& pt);

// (zeta(s)/zeta(2s) * prod_{p < below} (1 + p^-s)^-1) ^ exponent,
// an upper bound for prod_{p >= below} (1 + c p^-s) when c <= exponent.
Interval zeta_tail_power(double s, int64_t below, const Interval& exponent,
                         const PrimeTable& pt);

struct SieveChain {
  Interval T1_3, T1_9;          // printed individually; the source bundles them
  Interval s1_bundle;           // (1 + T1(3) + T1(9)) prod_{5<=p<=500} (1 + T1(p))
  Interval s1_mid_envelope;     // prod_{500<p<=4000} (1 + envelope_T1(p))
  Interval s1_zeta_tail;        // (zeta(3)/zeta(6) ...)^M2
  Interval s1;                  // product of the three, bound 3.096427
  Interval w_exact;             // exact-T product over [11, 500], bound 1.0294133
  Interval w_mid_envelope;      // (500, 4000] ratio envelopes, bound 1 + 9.64e-7
  Interval w_zeta_tail;         // (zeta(7/2)/zeta(7) ...)^M1, bound 1 + 3.85e-9
  Interval w_combined;          // product of the three, bound 1.0294143
  Interval M1, M2;
  Interval w_coefficient;       // 40.197 * w_combined, bound 41.379367
  Interval chain;               // e^gamma * 440.62 * w_coefficient * s1
  Interval chain_printed_path;  // e^gamma * 440.62 * 41.379367 * 3.096427
  Interval intermediate_128;    // 41.379367 * 3.096427
  Interval moment_s4t4;            // chain * (1/3)^4 (5/18)^4, bound 7.390869
  Interval moment_s4t4_pair;            // moment_s4t4^2-path, bound 54.62495
};

// Imported coefficients consumed by the chain, as decimal literals.
struct SieveChainImports {
  std::string cube_pair_integral = "440.62";
  std::string mertens_product = "40.197";
};

// Full chain with the exact T sweep over [11, 500] and envelopes beyond.
SieveChain sieve_chain(const PrimeTable& pt, unsigned workers = 1,
                       const SieveChainImports& imports = {});

}  // namespace linnik::sievec
