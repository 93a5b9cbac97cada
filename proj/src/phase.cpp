#include "linnik/phase.hpp"

#include <numeric>
#include <stdexcept>

namespace linnik {

namespace {
constexpr int64_t kMaxDen = (int64_t)1 << 60;
}

Interval cos2pi(int64_t num, int64_t den) {
  if (den < 1 || den > kMaxDen) throw std::invalid_argument("cos2pi: bad denominator");
  num %= den;
  if (num < 0) num += den;
  // exact octant reduction
  if (2 * num > den) return cos2pi(den - num, den);           // cos2pi(1-x) = cos2pi(x)
  if (4 * num > den) return -cos2pi(den - 2 * num, 2 * den);  // cos2pi(x) = -cos2pi(1/2-x)
  if (8 * num > den) return sin2pi(den - 4 * num, 4 * den);   // cos2pi(x) = sin2pi(1/4-x)
  // x in [0, 1/8]: cos(2 pi x) is decreasing
  Interval theta = Interval::pi().mul_ui(2).mul_ui((uint64_t)num).div_ui((uint64_t)den);
  return theta.cos_decreasing_enclosure();
}

Interval sin2pi(int64_t num, int64_t den) {
  if (den < 1 || den > kMaxDen) throw std::invalid_argument("sin2pi: bad denominator");
  num %= den;
  if (num < 0) num += den;
  if (2 * num >= den) return -sin2pi(2 * num - den, 2 * den);  // sin2pi(x) = -sin2pi(x-1/2)
  if (4 * num > den) return sin2pi(den - 2 * num, 2 * den);    // sin2pi(x) = sin2pi(1/2-x)
  if (8 * num > den) return cos2pi(den - 4 * num, 4 * den);    // sin2pi(x) = cos2pi(1/4-x)
  // x in [0, 1/8]: sin(2 pi x) is increasing
  Interval theta = Interval::pi().mul_ui(2).mul_ui((uint64_t)num).div_ui((uint64_t)den);
  return theta.sin_increasing_enclosure();
}

UnitPhase unit_phase(int64_t a, int64_t q) {
  if (q < 1) throw std::invalid_argument("unit_phase: q must be >= 1");
  int64_t t = a % q;
  if (t < 0) t += q;
  const int64_t g = std::gcd(t, q);
  const int64_t num = t / g;
  const int64_t den = q / g;
  return UnitPhase{num, den, CInterval{cos2pi(num, den), sin2pi(num, den)}};
}

PhaseTable::PhaseTable(int64_t q) : q_(q) {
  if (q < 1) throw std::invalid_argument("PhaseTable: modulus must be >= 1");
  table_.reserve((size_t)q);
  for (int64_t t = 0; t < q; ++t) {
    table_.push_back(CInterval{cos2pi(t, q), sin2pi(t, q)});
  }
}

const CInterval& PhaseTable::at(int64_t t) const {
  int64_t r = t % q_;
  if (r < 0) r += q_;
  return table_[(size_t)r];
}

}  // namespace linnik
