#pragma once

// Local factors A(n,q) of the singular series for the representation
// shape n = p1 + p2^2 + p3^3 + p4^3, and the chain of certified bounds
// built from them: per-prime minima, small-prime products, closed-form
// tail factors and the resulting floor constant.
//
//   A(n,q) = mu(q)/phi(q)^4 * sum_{(a,q)=1} C2(q,a) C3(q,a)^2 e(-a n / q)
//
// where C_i(q,a) sums e(a m^i / q) over reduced residues m mod q.

#include <cstdint>
#include <optional>
#include <vector>

#include "linnik/arith.hpp"
#include "linnik/interval.hpp"
#include "linnik/phase.hpp"

namespace linnik::series {

// Direct summation over the phi(q) reduced residues.
CInterval ramanujan_C(int64_t q, int64_t a, int exponent);

// Shared per-modulus machinery: residue histograms, phase table and the
// weights W(a) = C2(q,a) C3(q,a)^2 used by every A(n,q) evaluation.
class LocalSumEngine {
 public:
  explicit LocalSumEngine(int64_t q);  // q >= 1, mu(q) != 0
  int64_t modulus() const { return q_; }
  uint64_t phi() const { return mb_.phi; }
  int mu() const { return mb_.mu; }
  // Real enclosure of A(n,q); the a <-> q-a symmetrisation keeps the
  // imaginary residual structurally centred at zero, and its magnitude is
  // asserted below imaginary_tolerance().
  Interval A_at(int64_t n) const;

  static double imaginary_tolerance() { return 1e-20; }

 private:
  int64_t q_;
  MultiplicativeBasics mb_;
  PhaseTable phases_;
  std::vector<int64_t> coprime_;  // reduced residues, ascending
  std::vector<CInterval> weights_;
};

// A(n,q) for arbitrary q >= 1 (exact zero when mu(q) = 0).
Interval A_local(int64_t n, int64_t q);

struct LocalFactorRecord {
  int64_t p;
  std::vector<Interval> values;      // 1 + A(n,p), n = 1..p
  Interval min;                      // enclosure of min_n (1 + A(n,p))
  int64_t argmin;                    // smallest residue that may attain it
  bool argmin_unique;                // certified unique attaining residue
  std::vector<int64_t> tie_set;      // all candidate minimising residues
  Interval max_A;                    // enclosure of max_n A(n,p)
};

LocalFactorRecord local_factor_min(int64_t p);  // p prime >= 3

// {5, 11} together with every prime in [17, 199].
std::vector<int64_t> default_small_prime_set();

// Product of certified per-prime minima over the given set.
Interval product_small_primes(const std::vector<int64_t>& primes,
                              unsigned workers = 1);

struct TailFactor {
  int64_t p;
  int residue_class;  // p mod 3, either 1 or 2
  Interval bound;     // closed-form lower bound for 1 + A(n,p)
};

// Branch selected by p mod 3:
//   p = 2 (mod 3):  1 - (sqrt(p)+1) / (p-1)^3
//   p = 1 (mod 3):  1 - (sqrt(p)+1)(2 sqrt(p)+1)^2 / (p-1)^3
TailFactor tail_factor(int64_t p);  // p >= 5, p != 0 mod 3

// |A(n,p)| <= (sqrt(p)+1)(2 sqrt(p)+1)^2 / (p-1)^3, both branches.
Interval tail_abs_bound(int64_t p);

// Product of tail_factor bounds over primes in the open interval (lo, hi).
Interval tail_product(uint64_t lo, uint64_t hi, const PrimeTable& pt,
                      unsigned workers = 1);

// Rigorous floor for prod_{p > limit} (1 + A(n,p)), from
//   |A(n,p)| <= g(limit) p^{-3/2} with g decreasing, and
//   prod (1 - x_p) >= 1 - sum x_p,  sum_{p > limit} p^{-3/2} <= 2/sqrt(limit).
Interval analytic_tail_beyond(uint64_t limit);

struct ConstantCParts {
  Interval small;             // product over the default small-prime set
  Interval mid;               // tail_product over (199, prime_limit)
  Interval beyond_import;     // imported floor for p >= prime_limit
  Interval beyond_analytic;   // recomputed analytic floor for the same range
  Interval value;             // small * mid * beyond_import
  Interval value_analytic;    // small * mid * beyond_analytic
};

ConstantCParts constant_C(const PrimeTable& pt, unsigned workers = 1);

// sum_{j=1..p} (1 + A(j,p))^2 and sum_{j=1..p} A(j,p).
Interval sum_sq_identity(int64_t p);
Interval sum_A(int64_t p);

// Finite product over primes p <= Q of (1 + A(n,p)), times a rigorous tail:
// explicit interval factors up to max(Q, 13), the conservative closed-form
// branch for 13 < p <= pt.limit, and the analytic floor beyond. Factors at
// prime powers vanish (mu = 0), so the product over primes is the whole
// series.
Interval singular_series_truncated(int64_t n, uint64_t Q, const PrimeTable& pt,
                                   unsigned workers = 1);

}  // namespace linnik::series
