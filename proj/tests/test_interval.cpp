#include <doctest.h>

#include <stdexcept>

#include <cstdint>
#include <numeric>
#include <random>

#include "linnik/interval.hpp"
#include "linnik/phase.hpp"

using linnik::CInterval;
using linnik::Interval;

namespace {

// exact rational arithmetic oracle for the containment property
struct Rat {
  __int128 num;
  __int128 den;  // > 0

  static Rat make(long long n, long long d) {
    Rat r{n, d};
    r.normalise();
    return r;
  }
  void normalise() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }
  Rat operator+(const Rat& o) const { return normalised(num * o.den + o.num * den, den * o.den); }
  Rat operator*(const Rat& o) const { return normalised(num * o.num, den * o.den); }
  Rat operator/(const Rat& o) const { return normalised(num * o.den, den * o.num); }
  static Rat normalised(__int128 n, __int128 d) {
    Rat r{n, d};
    r.normalise();
    return r;
  }
};

bool rat_in(const Rat& r, const Interval& x) {
  // Build a near-point enclosure of the rational at high precision; it must
  // sit inside x, except when x is itself the degenerate exact value.
  const unsigned save = linnik::precision_bits();
  linnik::set_precision_bits(512);
  const Interval rx = Interval::exact_i128(r.num) / Interval::exact_i128(r.den);
  linnik::set_precision_bits(save);
  return x.contains(rx) || rx.contains(x);
}

}  // namespace

TEST_CASE("interval endpoints and exact constructors") {
  const Interval x = Interval::exact(7);
  CHECK(x.contains_ll(7));
  CHECK(x.lo_d() == 7.0);
  CHECK(x.hi_d() == 7.0);
  const Interval r = Interval::ratio(1, 3);
  CHECK(r.lo_d() <= 1.0 / 3.0);
  CHECK(r.hi_d() >= 1.0 / 3.0);
  CHECK(r.width_d() < 1e-30);
  CHECK(r.width_d() > 0.0);  // 1/3 is not binary-representable
  const Interval d = Interval::decimal("0.902985");
  CHECK(d.lo_d() <= 0.902985);
  CHECK(d.hi_d() >= 0.902985);
  CHECK_THROWS_AS(Interval::decimal("not-a-number"), std::invalid_argument);
}

TEST_CASE("containment property over +, *, /, power on random rationals") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<long long> num_dist(-999, 999);
  std::uniform_int_distribution<long long> den_dist(1, 99);
  for (int iter = 0; iter < 400; ++iter) {
    const Rat a = Rat::make(num_dist(rng), den_dist(rng));
    const Rat b = Rat::make(num_dist(rng), den_dist(rng));
    const Interval ia = Interval::ratio((long long)a.num, (long long)a.den);
    const Interval ib = Interval::ratio((long long)b.num, (long long)b.den);
    CHECK(rat_in(a + b, ia + ib));
    CHECK(rat_in(a * b, ia * ib));
    if (b.num != 0) CHECK(rat_in(a / b, ia / ib));
    const Rat sq = a * a;
    CHECK(rat_in(sq, ia.square()));
    CHECK(rat_in(sq * a, ia.pow_si(3)));
    CHECK(rat_in(sq * sq, ia.pow_si(4)));
  }
}

TEST_CASE("width shrinks as working precision grows") {
  const unsigned save = linnik::precision_bits();
  linnik::set_precision_bits(128);
  const double w128 = (Interval::pi() * Interval::ratio(1, 3)).sqrt().width_d();
  linnik::set_precision_bits(256);
  const double w256 = (Interval::pi() * Interval::ratio(1, 3)).sqrt().width_d();
  linnik::set_precision_bits(save);
  CHECK(w256 < w128);
  CHECK(w256 > 0.0);
}

TEST_CASE("division by an interval containing zero is rejected") {
  const Interval z = Interval::span(Interval::exact(-1), Interval::exact(1));
  CHECK_THROWS_AS(Interval::exact(1) / z, std::domain_error);
  CHECK_THROWS_AS(Interval::exact(-3).sqrt(), std::domain_error);
  CHECK_THROWS_AS(Interval::exact(0).log(), std::domain_error);
}

TEST_CASE("unique integer extraction") {
  const Interval x = Interval::ratio(599, 100);  // 5.99
  CHECK(!x.unique_integer().has_value());
  const Interval y = Interval::span(Interval::decimal("5.9"), Interval::decimal("6.1"));
  REQUIRE(y.unique_integer().has_value());
  CHECK(*y.unique_integer() == 6);
  CHECK(!y.unique_floor().has_value());  // lo floors to 5, hi floors to 6
  const Interval z = Interval::span(Interval::decimal("6.2"), Interval::decimal("6.8"));
  CHECK(*z.unique_floor() == 6);
  CHECK(!z.unique_integer().has_value());
}

TEST_CASE("complex interval arithmetic and powers") {
  const CInterval i{Interval::exact(0), Interval::exact(1)};
  const CInterval i2 = i * i;
  CHECK(i2.re.contains_ll(-1));
  CHECK(i2.im.contains_ll(0));
  const CInterval z{Interval::ratio(3, 5), Interval::ratio(4, 5)};
  CHECK(z.abs2().contains_ll(1));
  CHECK(z.pow_ui(4).abs2().contains_ll(1));
}

TEST_CASE("rational phase values hit exact trig points") {
  using linnik::cos2pi;
  using linnik::sin2pi;
  CHECK(cos2pi(0, 5).contains_ll(1));
  CHECK(sin2pi(0, 5).contains_ll(0));
  CHECK(cos2pi(1, 2).contains_ll(-1));
  CHECK(sin2pi(1, 2).contains_ll(0));
  CHECK(cos2pi(1, 4).contains_ll(0));
  CHECK(sin2pi(1, 4).contains_ll(1));
  // cos(2 pi / 12) = sqrt(3)/2, an exact algebraic point
  const Interval target = Interval::exact(3).sqrt().div_ui(2);
  CHECK(cos2pi(1, 12).overlaps(target));
  CHECK(target.contains(cos2pi(1, 12)));
  // sin(2 pi / 12) = 1/2
  CHECK(sin2pi(1, 12).contains(Interval::ratio(1, 2)));
  // negative arguments reduce mod 1
  CHECK(cos2pi(-1, 4).contains_ll(0));
  CHECK(sin2pi(-1, 4).contains_ll(-1));
}

TEST_CASE("unit phase invariants: modulus one and q-th power") {
  for (const auto& [a, q] : {std::pair<int64_t, int64_t>{1, 7}, {3, 11}, {5, 12}, {2, 9}}) {
    const auto ph = linnik::unit_phase(a, q);
    CHECK(ph.value.abs2().contains_ll(1));
    CHECK(ph.value.pow_ui((uint64_t)q).re.contains_ll(1));
    CHECK(ph.value.pow_ui((uint64_t)q).im.contains_ll(0));
    // value(a/q) * value(-a/q) contains 1
    const auto inv = linnik::unit_phase(-a, q);
    const CInterval prod = ph.value * inv.value;
    CHECK(prod.re.contains_ll(1));
    CHECK(prod.im.contains_ll(0));
  }
}

TEST_CASE("phase table agrees with unit phase") {
  const linnik::PhaseTable pt(12);
  for (int64_t t = 0; t < 12; ++t) {
    const auto ph = linnik::unit_phase(t, 12);
    CHECK(pt.at(t).re.overlaps(ph.value.re));
    CHECK(pt.at(t).im.overlaps(ph.value.im));
  }
  CHECK(pt.at(-1).re.overlaps(pt.at(11).re));
}
