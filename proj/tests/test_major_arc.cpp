#include <doctest.h>

#include <stdexcept>

#include "linnik/arith.hpp"
#include "linnik/major_arc.hpp"

using namespace linnik;
using namespace linnik::major;

TEST_CASE("window parameters: exact rational box bounds") {
  const auto p = FrakJParams::make(10'000, 10'000);
  // U^3 = 625e4 / 10001 = 624.93...; 8 U^3 = 4999.5
  CHECK(p.m3_lo == 625);
  CHECK(p.m3_hi == 4999);
  CHECK(p.U3.contains(Interval::ratio(6250000, 10001)));
  // V^3 = (U^3)^(5/6); box nonempty and below U^3
  CHECK(p.m4_lo > 1);
  CHECK(p.m4_lo < p.m4_hi);
  CHECK(p.m4_hi < 8 * p.m4_lo);  // floor(8 V^3) < 8 ceil(V^3)
  CHECK(p.V3.definitely_lt(p.U3));
  CHECK_THROWS_AS(FrakJParams::make(10'000, 20'000), std::invalid_argument);
}

TEST_CASE("empty region gives the zero sum") {
  // n far below the smallest admissible m3 + m4 + 2
  const auto p = FrakJParams::make(10'000, 600);
  CHECK(frakJ_exact(p).contains_ll(0));
  CHECK(frakJ_exact(p).width_d() == 0.0);
}

TEST_CASE("exact sum at desk scale: positivity and regression enclosure") {
  const auto p = FrakJParams::make(10'000, 10'000);
  const Interval j = frakJ_exact(p, 2);
  CHECK(j.strictly_positive());
  // frozen after the first computation; the enclosure must stay inside
  const Interval frozen =
      Interval::span(Interval::decimal("75158.652357"), Interval::decimal("75158.652358"));
  CHECK_MESSAGE(frozen.contains(j), "frakJ(1e4) enclosure [", j.lo_str(12), ", ", j.hi_str(12),
                "] left the frozen regression window");
  // ratio against n^(10/9) recorded alongside
  const Interval ratio = j / (Interval::exact(10'000).log() * Interval::ratio(10, 9)).exp();
  CHECK(ratio.strictly_positive());
}

TEST_CASE("monotone in n across the window") {
  const auto p_left = FrakJParams::make(10'000, 9'999 - 9'999 % 2);
  const auto p_right = FrakJParams::make(10'000, 10'000);
  const Interval j_left = frakJ_exact(p_left, 2);
  const Interval j_right = frakJ_exact(p_right, 2);
  CHECK(!j_right.definitely_lt(j_left));
}

TEST_CASE("midpoint additivity is exact by construction") {
  const auto p = FrakJParams::make(2'000, 2'000);
  const int64_t mid = p.m3_lo + (p.m3_hi - p.m3_lo) / 2;
  const Interval whole = frakJ_exact_range(p, p.m3_lo, p.m3_hi, 1);
  const Interval left = frakJ_exact_range(p, p.m3_lo, mid, 1);
  const Interval right = frakJ_exact_range(p, mid + 1, p.m3_hi, 1);
  const Interval glued = left + right;
  CHECK(whole.lo_str(30) == glued.lo_str(30));
  CHECK(whole.hi_str(30) == glued.hi_str(30));
}

TEST_CASE("continuous bracket encloses the exact sum at small scales") {
  for (uint64_t N : {1'000ull, 10'000ull}) {
    const auto p = FrakJParams::make(N, N);
    const Interval exact = frakJ_exact(p, 2);
    const auto cont = frakJ_continuous(p, 192, 2);
    // certified: the exact sum sits inside the outer hull of the brackets
    REQUIRE(exact.definitely_ge(cont.discrete_lo.lower_point()));
    REQUIRE(exact.definitely_le(cont.discrete_hi.upper_point()));
    // the pure integral also lands near the exact sum
    CHECK(cont.integral.strictly_positive());
  }
}

TEST_CASE("window check at the theorem scale") {
  const auto check = frakJ_window_check(1'000'000'000'000'000'000ull,
                                        Interval::decimal("2.338190371"), 128, 512, 2);
  CHECK(check.decided);
  CHECK(check.pass);
  CHECK(check.ratio_left.definitely_ge(Interval::decimal("2.338190371")));
  CHECK(check.ratio_right.strictly_positive());
  // window stability: the ratio against n^(10/9) varies below 2 percent;
  // the quadrature must be fine enough that enclosure width does not mask it
  const uint64_t N = 1'000'000'000'000'000'000ull;
  const uint64_t n_left = N / 10000 * 9999;
  const auto left = frakJ_continuous(FrakJParams::make(N, n_left), 512, 2);
  const auto right = frakJ_continuous(FrakJParams::make(N, N), 512, 2);
  const Interval r_left =
      left.integral / (Interval::exact_u64(n_left).log() * Interval::ratio(10, 9)).exp();
  const Interval r_right =
      right.integral / (Interval::exact_u64(N).log() * Interval::ratio(10, 9)).exp();
  const Interval rel_gap = (r_right - r_left).abs() / r_left;
  CHECK(rel_gap.hi_d() < 0.02);
}

TEST_CASE("main-term coefficient composition") {
  const Interval v = main_term_coefficient();
  // monotone in each input
  CHECK(main_term_coefficient(Interval::decimal("3.27"), Interval::decimal("2.338190371"))
            .definitely_gt(v));
  CHECK(main_term_coefficient(Interval::decimal("3.261435"), Interval::decimal("2.35"))
            .definitely_gt(v));
  CHECK(v.definitely_ge(Interval::decimal("0.055033")));
  // the square of the window constant
  const Interval c2sq = Interval::decimal("2.338190371").square();
  CHECK(Interval::span(Interval::decimal("5.46713"), Interval::decimal("5.46714")).contains(c2sq));
  // 1/(2^2 3^4) = 1/324 exactly
  CHECK((Interval::ratio(1, 324).mul_ui(324)).contains_ll(1));
}

TEST_CASE("parseval identities at small scale") {
  const PrimeTable pt = sieve_primes(1'000'000);
  const auto f100 = parseval_identity('f', 100, pt);
  // direct oracle: sum over the 25 primes <= 100
  Interval direct;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                     59, 61, 67, 71, 73, 79, 83, 89, 97}) {
    direct += Interval::exact_u64(p).log().square();
  }
  CHECK(f100.sum_side.overlaps(direct));
  CHECK(f100.within);
  const auto g10 = parseval_identity('g', 10, pt);
  const Interval expect =
      Interval::exact(2).log().square() + Interval::exact(3).log().square();
  CHECK(g10.sum_side.overlaps(expect));
  CHECK_THROWS_AS(parseval_identity('x', 100, pt), std::invalid_argument);
}

TEST_CASE("fourth-moment count for the square generating function") {
  const PrimeTable pt = sieve_primes(1'000'000);
  const auto m = g4_moment(10'000, pt);
  CHECK(m.value.strictly_positive());
  // informational: the normalised constant is modest at this scale
  CHECK(m.normalised.hi_d() < 10.0);
  CHECK(m.normalised.lo_d() > 0.0);
}
