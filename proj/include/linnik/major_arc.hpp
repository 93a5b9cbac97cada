#pragma once

// The singular integral: exact weighted lattice sum at desk scale, a
// rigorous continuous surrogate with monotone-cell quadrature at any scale,
// the main-term constant composition and Parseval-type identities for the
// prime generating functions.

#include <cstdint>

#include "linnik/arith.hpp"
#include "linnik/interval.hpp"

namespace linnik::major {

// Window scale parameters: U^3 = 625 N / 10001 (that is N / (16(1+delta))
// at delta = 1e-4) and V^3 = (U^3)^(5/6).
struct FrakJParams {
  uint64_t N = 0;
  uint64_t n = 0;
  int64_t m3_lo = 0, m3_hi = 0;  // integer range [ceil(U^3), floor(8 U^3)]
  int64_t m4_lo = 0, m4_hi = 0;  // integer range [ceil(V^3), floor(8 V^3)]
  Interval U3, V3;

  static FrakJParams make(uint64_t N, uint64_t n);
};

// Exact region sum
//   sum m2^(-1/2) (m3 m4)^(-2/3)
// over m1+m2+m3+m4 = n, m1,m2 in [1,N], m3 in [U^3, 8U^3], m4 in [V^3, 8V^3],
// with the inner m2 sum taken from prefix sums. The m3 range is reduced by
// midpoint recursion, so splitting the range at its midpoint and adding the
// two sub-sums reproduces the full enclosure bit for bit.
Interval frakJ_exact(const FrakJParams& p, unsigned workers = 1);
Interval frakJ_exact_range(const FrakJParams& p, int64_t m3_from, int64_t m3_to,
                           unsigned workers = 1);

struct FrakJContinuous {
  Interval integral;     // enclosure of the continuous surrogate
  Interval discrete_lo;  // rigorous lower bound for the exact lattice sum
  Interval discrete_hi;  // rigorous upper bound for the exact lattice sum
  unsigned cells;
};

// Quadrature of the surrogate integral 2 sqrt(min(N, n-x3-x4)) (x3 x4)^(-2/3)
// over the window, with monotone cell bounds; the discrete brackets shift
// the region by one lattice step and use the Euler-Maclaurin bracket
// 2 sqrt(X) - 2 <= sum_{m<=X} m^(-1/2) <= 2 sqrt(X) - 1 for the inner sum.
FrakJContinuous frakJ_continuous(const FrakJParams& p, unsigned cells = 256,
                                 unsigned workers = 1);

// Lower bound for surrogate / N^(10/9) over the window n in [(1-delta)N, N];
// the surrogate increases with n, so the infimum is attained at the left
// edge. Refines the quadrature up to max_cells until the comparison against
// the reference constant is decided.
struct WindowCheck {
  Interval ratio_left;   // at n = (1-delta) N
  Interval ratio_right;  // at n = N
  bool decided;
  bool pass;
  unsigned cells_used;
};
WindowCheck frakJ_window_check(uint64_t N, const Interval& reference,
                               unsigned cells = 256, unsigned max_cells = 1024,
                               unsigned workers = 1);

// (1 / (4 * 81)) * pair_floor * window_floor^2, the main-term coefficient;
// monotone increasing in both inputs.
Interval main_term_coefficient(const Interval& pair_floor, const Interval& window_floor);

// The composition at the reference constants 3.261435 and 2.338190371.
Interval main_term_coefficient();

struct ParsevalCheck {
  Interval sum_side;  // exact value of the mean-square integral
  Interval bound;     // trivial bound it must stay below
  bool within;
};

// which = 'f': sum_{p<=N} log^2 p against N log N.
// which = 'g': sum_{p<=sqrt(N)} log^2 p against sqrt(N) log N.
ParsevalCheck parseval_identity(char which, uint64_t N, const PrimeTable& pt);

struct G4Moment {
  Interval value;       // sum over m of r(m)^2, r(m) the weighted p1^2+p2^2 count
  Interval normalised;  // value / (N log^2 N)
};

G4Moment g4_moment(uint64_t N, const PrimeTable& pt);

}  // namespace linnik::major
