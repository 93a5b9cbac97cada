#pragma once

// Rigorous interval arithmetic over MPFR floats with directed rounding.
// Every operation returns an enclosure of the exact mathematical result;
// endpoints are rounded outward. All values are finite by construction,
// operations that could produce an unbounded or empty result throw.

#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>

namespace linnik {

// Working precision (bits) used for the endpoints of newly created
// intervals. Global knob, read at construction time; 128 by default.
unsigned precision_bits();
void set_precision_bits(unsigned bits);  // bits >= 64

class Interval {
 public:
  Interval();  // [0, 0]
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval exact(long long v);
  static Interval exact_u64(uint64_t v);
  static Interval exact_i128(__int128 v);
  static Interval exact_double(double v);
  // Enclosure of num/den (den != 0).
  static Interval ratio(long long num, long long den);
  // Enclosure of a decimal literal such as "0.902985" or "2.338190371e0".
  static Interval decimal(const std::string& s);
  // Interval spanning from a's lower endpoint to b's upper endpoint.
  static Interval span(const Interval& a, const Interval& b);
  static Interval pi();
  static Interval euler_gamma();

  double lo_d() const;  // lower endpoint, rounded toward -inf
  double hi_d() const;  // upper endpoint, rounded toward +inf
  // Decimal renderings with explicit significant-digit count; the lower
  // endpoint rounds down, the upper rounds up, so printed enclosures stay
  // valid.
  std::string lo_str(int digits) const;
  std::string hi_str(int digits) const;
  double width_d() const;  // hi - lo rounded up

  bool contains_zero() const;
  bool contains(const Interval& o) const;  // o subseteq this
  bool contains_ll(long long v) const;
  bool contains_i128(__int128 v) const;
  bool strictly_positive() const;  // lo > 0
  bool strictly_negative() const;  // hi < 0
  bool nonnegative() const;        // lo >= 0

  // Certified order relations against another enclosure. True only when
  // the relation holds for every pair of points in the two intervals.
  bool definitely_ge(const Interval& o) const;  // lo >= o.hi
  bool definitely_le(const Interval& o) const;  // hi <= o.lo
  bool definitely_gt(const Interval& o) const;
  bool definitely_lt(const Interval& o) const;
  bool overlaps(const Interval& o) const;

  // The unique integer in the interval, if there is exactly one.
  std::optional<long long> unique_integer() const;
  std::optional<long long> unique_floor() const;  // floor, if unambiguous

  // Degenerate intervals at one endpoint (exact, no rounding).
  Interval lower_point() const;
  Interval upper_point() const;

  Interval operator-() const;
  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // o must not contain 0
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);

  Interval add_ll(long long v) const;
  Interval sub_ll(long long v) const;
  Interval mul_ui(uint64_t v) const;
  Interval div_ui(uint64_t v) const;  // v != 0

  Interval square() const;
  Interval sqrt() const;  // requires lo >= 0
  Interval pow_si(long n) const;
  Interval pow(const Interval& y) const;  // requires lo > 0
  Interval exp() const;
  Interval log() const;  // requires lo > 0
  Interval abs() const;
  Interval recip() const;
  Interval min_with(const Interval& o) const;
  Interval max_with(const Interval& o) const;
  // Enclosure clipped from below at an exact integer (used after
  // operations whose result is known to be >= that bound).
  Interval clamp_min_ll(long long v) const;

  // Enclosures of cos/sin over this argument interval, valid only when the
  // argument lies in a range where the function is monotone in the stated
  // direction (used after exact octant reduction of rational phases).
  Interval cos_decreasing_enclosure() const;
  Interval sin_increasing_enclosure() const;

  // Same value re-enclosed at the current working precision.
  Interval rounded_to_current_precision() const;

 private:
  void init_pair();
  mpfr_t lo_, hi_;
};

// Rectangular complex enclosure: independent intervals for the real and
// imaginary parts. Simple error propagation through exponential sums.
struct CInterval {
  Interval re, im;

  static CInterval one();
  static CInterval zero();

  CInterval operator+(const CInterval& o) const;
  CInterval operator-(const CInterval& o) const;
  CInterval operator*(const CInterval& o) const;
  CInterval& operator+=(const CInterval& o);
  CInterval conj() const;
  CInterval mul_ui(uint64_t v) const;
  CInterval scale(const Interval& s) const;
  CInterval pow_ui(uint64_t n) const;
  Interval abs2() const;  // |z|^2
  Interval abs() const;
  bool contains(const CInterval& o) const;
};

}  // namespace linnik
