#include "linnik/sieve_constants.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "linnik/parallel.hpp"
#include "linnik/phase.hpp"

namespace linnik::sievec {

namespace {

constexpr double kImagTolerance = 1e-20;

void check_imaginary(const Interval& im, const char* where) {
  const double mag = std::max(std::abs(im.lo_d()), std::abs(im.hi_d()));
  if (mag > kImagTolerance) {
    throw std::runtime_error(std::string(where) + ": imaginary residual above tolerance");
  }
}

}  // namespace

CubicSumTable cubic_sums(int64_t q) {
  if (q < 1 || q > 10'000) throw std::invalid_argument("cubic_sums: need 1 <= q <= 1e4");
  const PhaseTable phases(q);
  // cube-residue histograms make every S(q,a), C(q,a) an O(q) sweep
  std::vector<uint32_t> hist_all((size_t)q, 0), hist_cop((size_t)q, 0);
  for (int64_t m = 1; m <= q; ++m) {
    const uint64_t t = (uint64_t)((((unsigned __int128)m * m % (uint64_t)q) * m) % (uint64_t)q);
    hist_all[(size_t)t]++;
    if (std::gcd(m, q) == 1) hist_cop[(size_t)t]++;
  }
  CubicSumTable out;
  out.q = q;
  out.S.reserve((size_t)q);
  out.C.reserve((size_t)q);
  for (int64_t a = 1; a <= q; ++a) {
    CInterval s = CInterval::zero(), c = CInterval::zero();
    for (int64_t t = 0; t < q; ++t) {
      if (hist_all[(size_t)t] == 0) continue;
      const CInterval& ph = phases.at(a * t);
      s += ph.mul_ui(hist_all[(size_t)t]);
      if (hist_cop[(size_t)t] != 0) c += ph.mul_ui(hist_cop[(size_t)t]);
    }
    out.S.push_back(s);
    out.C.push_back(c);
  }
  return out;
}

TValues T_values(int64_t q) {
  if (q < 3) throw std::invalid_argument("T_values: q must be >= 3");
  const CubicSumTable tab = cubic_sums(q);
  const MultiplicativeBasics mb = multiplicative_basics((uint64_t)q);
  const bool prime = is_prime_u64((uint64_t)q);
  // phi^7 fits u64 only for phi < 2^9.x; go through interval arithmetic
  const Interval phi7 = Interval::exact_u64(mb.phi).pow_si(7);
  const Interval denom = phi7.mul_ui((uint64_t)q);

  Interval t1_re, t1_im, tq_re, tq_im;
  for (int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const int64_t paired = q - a;
    if (a > paired) continue;  // conjugate of the a < q-a term
    const CInterval& c = tab.C[(size_t)a - 1];
    const Interval c_abs2 = c.abs2();
    const CInterval core = c.conj().scale(c_abs2.pow_si(3));  // C^3 conj(C)^4
    const CInterval term1 = tab.S[(size_t)a - 1] * core;
    const uint64_t mult = (a == paired) ? 1 : 2;
    t1_re += term1.re.mul_ui(mult);
    t1_im += (mult == 2) ? (term1.im - term1.im) : term1.im;
    if (prime) {
      // d = q: S(q, a q^3) = S(q, 0) = q
      tq_re += core.re.mul_ui(mult).mul_ui((uint64_t)q);
      tq_im += (mult == 2) ? (core.im - core.im) : core.im;
    }
  }
  check_imaginary(t1_im, "T_values(T1)");
  TValues out;
  out.q = q;
  out.T1 = t1_re / denom;
  if (prime) {
    check_imaginary(tq_im, "T_values(Tq)");
    out.Tq = tq_re / denom;
    // structural zero: for p = 2 mod 3 cubing permutes reduced residues, so
    // S(p,a) = 0 and T_1(p) must enclose 0
    if (q % 3 == 2 && !out.T1.contains_zero()) {
      throw std::runtime_error("T_values: T1 fails the structural zero at p = 2 mod 3");
    }
  }
  return out;
}

Interval envelope_Tp(int64_t p) {
  const Interval sp = Interval::exact(p).sqrt();
  const Interval num = sp.mul_ui(2).add_ll(1).pow_si(5).mul_ui((uint64_t)(2 * p + 1));
  return num / Interval::exact(p - 1).pow_si(6);
}

Interval envelope_T1(int64_t p) {
  const Interval sp = Interval::exact(p).sqrt();
  const Interval num =
      sp.mul_ui(2).add_ll(1).pow_si(5).mul_ui((uint64_t)(2 * p + 1)).mul_ui(2);
  return num / (sp * Interval::exact(p - 1).pow_si(6));
}

Interval ratio_envelope(int64_t p) {
  if (p < 13) throw std::invalid_argument("ratio_envelope: p must be >= 13");
  // denominator condition behind the 1.2304 prefactor
  if (!envelope_T1(p).definitely_lt(Interval::exact(1))) {
    throw std::runtime_error("ratio_envelope: denominator condition fails");
  }
  const Interval sp = Interval::exact(p).sqrt();
  const Interval num = Interval::ratio(12304, 10000) * sp.mul_ui(2).add_ll(1).pow_si(5) *
                       Interval::exact(2 * p + 1) * (sp.add_ll(2));
  return num / (Interval::exact(p - 1).pow_si(7) * sp);
}

std::pair<Interval, Interval> M_constants() {
  const Interval s = Interval::exact(4000).sqrt().recip();  // 1/sqrt(4000)
  const Interval one = Interval::exact(1);
  const Interval common = (Interval::exact(2) + s).pow_si(5) * Interval::ratio(8001, 4000);
  const Interval m1 = Interval::ratio(12304, 10000) * (one + s.mul_ui(2)) * common *
                      Interval::ratio(3999, 4000).pow_si(-7);
  const Interval m2 = common.mul_ui(2) * Interval::ratio(3999, 4000).pow_si(-6);
  return {m1, m2};
}

Interval product_exact_T(int64_t lo, int64_t hi, const PrimeTable& pt, unsigned workers) {
  const auto [b, e] = pt.open_range((uint64_t)lo - 1, (uint64_t)hi + 1);  // closed [lo, hi]
  std::vector<size_t> idx;
  for (size_t i = b; i < e; ++i) idx.push_back(i);
  auto factors = parallel_map<Interval>(idx.size(), workers, [&](size_t i) {
    const int64_t p = (int64_t)pt.primes[idx[i]];
    const TValues tv = T_values(p);
    const Interval one = Interval::exact(1);
    const Interval denom_part = one + tv.T1;
    if (denom_part.contains_zero()) {
      throw std::runtime_error("product_exact_T: 1 + T1 encloses zero at p=" + std::to_string(p));
    }
    return one - (tv.Tq - tv.T1) / (denom_part.mul_ui((uint64_t)(p - 1)));
  });
  Interval prod = Interval::exact(1);
  for (const Interval& f : factors) prod *= f;
  return prod;
}

Interval product_ratio_envelope(int64_t lo, int64_t hi, const PrimeTable& pt) {
  const auto [b, e] = pt.open_range((uint64_t)lo, (uint64_t)hi + 1);
  Interval prod = Interval::exact(1);
  for (size_t i = b; i < e; ++i) {
    prod *= Interval::exact(1) + ratio_envelope((int64_t)pt.primes[i]);
  }
  return prod;
}

Interval product_T1_envelope(int64_t lo, int64_t hi, const PrimeTable& pt) {
  const auto [b, e] = pt.open_range((uint64_t)lo, (uint64_t)hi + 1);
  Interval prod = Interval::exact(1);
  for (size_t i = b; i < e; ++i) {
    prod *= Interval::exact(1) + envelope_T1((int64_t)pt.primes[i]);
  }
  return prod;
}

Interval zeta_tail_power(double s, int64_t below, const Interval& exponent,
                         const PrimeTable& pt) {
  const Interval zr = zeta_interval(s, 1e-13) / zeta_interval(2 * s, 1e-13);
  Interval finite = Interval::exact(1);
  for (uint64_t p : pt.primes) {
    if ((int64_t)p >= below) break;
    finite *= Interval::exact(1) + pow_neg_s(p, s);
  }
  const Interval base = zr / finite;
  if (!base.strictly_positive()) throw std::runtime_error("zeta_tail_power: base not positive");
  return base.pow(exponent);
}

SieveChain sieve_chain(const PrimeTable& pt, unsigned workers,
                       const SieveChainImports& imports) {
  SieveChain out;
  const auto [m1, m2] = M_constants();
  out.M1 = m1;
  out.M2 = m2;

  out.T1_3 = T_values(3).T1;
  out.T1_9 = T_values(9).T1;
  const Interval bundle_head = Interval::exact(1) + out.T1_3 + out.T1_9;

  // prod_{5 <= p <= 500} (1 + T1(p))
  const auto [b, e] = pt.open_range(4, 501);
  std::vector<size_t> idx;
  for (size_t i = b; i < e; ++i) idx.push_back(i);
  auto t1_factors = parallel_map<Interval>(idx.size(), workers, [&](size_t i) {
    return Interval::exact(1) + T_values((int64_t)pt.primes[idx[i]]).T1;
  });
  Interval t1_prod = Interval::exact(1);
  for (const Interval& f : t1_factors) t1_prod *= f;
  out.s1_bundle = bundle_head * t1_prod;
  out.s1_mid_envelope = product_T1_envelope(500, 4000, pt);
  out.s1_zeta_tail = zeta_tail_power(3.0, 4000, out.M2, pt);
  out.s1 = out.s1_bundle * out.s1_zeta_tail * out.s1_mid_envelope;

  out.w_exact = product_exact_T(11, 500, pt, workers);
  out.w_mid_envelope = product_ratio_envelope(500, 4000, pt);
  out.w_zeta_tail = zeta_tail_power(3.5, 4000, out.M1, pt);
  out.w_combined = out.w_exact * out.w_mid_envelope * out.w_zeta_tail;
  out.w_coefficient = Interval::decimal(imports.mertens_product) * out.w_combined;

  const Interval e_gamma = Interval::euler_gamma().exp();
  const Interval import_440 = Interval::decimal(imports.cube_pair_integral);
  out.chain = e_gamma * import_440 * out.w_coefficient * out.s1;
  out.intermediate_128 = Interval::decimal("41.379367") * Interval::decimal("3.096427");
  out.chain_printed_path = e_gamma * import_440 * out.intermediate_128;

  // (1/3)^4 (5/18)^4 = 625 / 8503056 exactly
  const Interval scale = Interval::ratio(625, 8503056);
  out.moment_s4t4 = out.chain * scale;
  out.moment_s4t4_pair = out.moment_s4t4.square();
  return out;
}

}  // namespace linnik::sievec
