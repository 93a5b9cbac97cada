#pragma once

// Sums of powers of two modulo q: the exponential-sum profile f(r), the
// density coefficient it certifies, exact tuple-counting oracles (dynamic
// programming against the closed exponential-sum identity), signed pair
// histograms, and the empirical large-|G| measure companion.

#include <cstdint>
#include <vector>

#include "linnik/arith.hpp"
#include "linnik/interval.hpp"

namespace linnik::pow2 {

struct TwoAdicProfile {
  int64_t q = 0;
  uint64_t rho = 0;                // order of 2 mod q
  std::vector<Interval> f;         // f[r-1] encloses f(r), r = 1..q
  Interval max_nontrivial;         // enclosure of max_{1<=r<q} f(r)
  int64_t max_arg = 0;             // smallest residue that may attain it
  bool max_unique = false;         // certified unique attaining residue
  std::vector<int64_t> tie_set;    // all residues that may attain the max
  unsigned precision_used = 0;
};

// Full profile for odd q >= 3. If the top two values cannot be separated
// at the working precision the computation escalates up to 4x before
// reporting a tie set.
TwoAdicProfile two_adic_profile(int64_t q);

// L^k coefficient (1/q)(1 - (q-1)(max f / rho)^k) of the residue-class
// count floor. May be negative for small k; that is a reported outcome,
// not an error.
Interval density_coefficient(const TwoAdicProfile& profile, uint64_t k);

// (2 C)^2 * q * density_coefficient(q, k), the floor for the paired series
// sum; monotone increasing in k for fixed modulus.
Interval pair_sum_floor(const Interval& series_floor, const TwoAdicProfile& profile,
                        uint64_t k);

struct PowerSumCount {
  int64_t q;
  uint64_t k;
  uint64_t L;
  int64_t target;               // residue class of the power sum mod q
  unsigned __int128 count;      // exact number of (v_1..v_k) in [1,L]^k
};

// Exact count of tuples with 2^{v_1} + ... + 2^{v_k} = target (mod q),
// by k-fold convolution over residues mod q.
PowerSumCount power_sum_count_dp(int64_t q, uint64_t k, uint64_t L, int64_t target);

struct ExpsumCount {
  Interval enclosure;           // contains the exact integer count
  unsigned __int128 count;      // the isolated integer
  unsigned precision_used;
};

// Closed-form count at L = rho(q):
//   (1/q) sum_{r=1..q} e(-r target / q) (sum_{v<=rho} e(r 2^v / q))^k.
// Escalates precision until the enclosure isolates a unique integer.
ExpsumCount power_sum_count_expsum(int64_t q, uint64_t k, int64_t target);

struct PairHistogram {
  unsigned k = 0;
  unsigned L = 0;
  int64_t min_h = 0;                          // offset of counts[0]
  std::vector<unsigned __int128> counts;      // counts[h - min_h] = r_k(h)
  unsigned __int128 at(int64_t h) const;
  unsigned __int128 total() const;
};

// r_k(h): number of tuples (v_1..v_k, u_1..u_k), all in [4, L], with
// sum (2^{v_j} - 2^{u_j}) = h. Dense array over the reachable range;
// rejected when the range exceeds max_entries.
PairHistogram r_k_histogram(unsigned k, unsigned L,
                            size_t max_entries = (size_t)1 << 26);

struct ELambdaLevel {
  unsigned L;
  uint64_t grid;
  uint64_t hits;
  double measure;
};

struct ELambdaMeasure {
  double lambda = 0;
  unsigned L = 0;
  uint64_t grid = 0;
  double measure = 0;
  double fitted_exponent = 0;     // least-squares fit of -log(measure)/log(2^l)
  bool fit_valid = false;
  std::vector<ELambdaLevel> levels;
};

// Non-rigorous grid estimate of meas{alpha : |sum_{v<=L} e(2^v alpha)| >=
// lambda L}. The fitted exponent regresses log(measure) on log(2^l) over
// sub-levels l = L, L-2, ... down to 8. Statistical output only.
ELambdaMeasure measure_E_lambda_empirical(double lambda, unsigned L, uint64_t grid,
                                          unsigned workers = 1);

}  // namespace linnik::pow2
