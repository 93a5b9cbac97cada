#pragma once

// e(a/q) = exp(2*pi*i*a/q) for exact rationals, with containment.
// Arguments are reduced to [0, 1/8] of a period by exact rational symmetry
// before series evaluation, so cos/sin are evaluated only on a range where
// they are monotone and the directed endpoint roundings give an enclosure.

#include <cstdint>

#include "linnik/interval.hpp"

#include <vector>

namespace linnik {

// cos(2*pi*num/den) and sin(2*pi*num/den); num may be any integer, den >= 1.
Interval cos2pi(int64_t num, int64_t den);
Interval sin2pi(int64_t num, int64_t den);

// e(a/q) with reduced argument bookkeeping.
struct UnitPhase {
  int64_t num;  // reduced numerator, 0 <= num < den
  int64_t den;  // reduced denominator, >= 1
  CInterval value;
};

UnitPhase unit_phase(int64_t a, int64_t q);

// Table of e(t/q) for t = 0..q-1. Immutable once built; shared freely.
class PhaseTable {
 public:
  explicit PhaseTable(int64_t q);
  int64_t modulus() const { return q_; }
  // e(t/q) for any integer t (reduced mod q).
  const CInterval& at(int64_t t) const;

 private:
  int64_t q_;
  std::vector<CInterval> table_;
};

}  // namespace linnik
