#include "linnik/singular_series.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "linnik/parallel.hpp"

namespace linnik::series {

namespace {

std::vector<int64_t> reduced_residues(int64_t q) {
  std::vector<int64_t> out;
  for (int64_t m = 1; m <= q; ++m) {
    if (std::gcd(m, q) == 1) out.push_back(m % q);
  }
  return out;
}

// Histogram of m^e mod q over reduced residues m.
std::vector<uint32_t> power_residue_histogram(int64_t q, int e) {
  std::vector<uint32_t> hist((size_t)q, 0);
  for (int64_t m = 1; m <= q; ++m) {
    if (std::gcd(m, q) != 1) continue;
    uint64_t t = 1;
    for (int i = 0; i < e; ++i) t = (t * (uint64_t)(m % q)) % (uint64_t)q;
    hist[(size_t)t]++;
  }
  return hist;
}

CInterval hist_phase_sum(const std::vector<uint32_t>& hist, const PhaseTable& phases,
                         int64_t a) {
  const int64_t q = phases.modulus();
  CInterval acc = CInterval::zero();
  for (int64_t t = 0; t < q; ++t) {
    const uint32_t c = hist[(size_t)t];
    if (c == 0) continue;
    acc += phases.at((a % q) * t).mul_ui(c);
  }
  return acc;
}

}  // namespace

CInterval ramanujan_C(int64_t q, int64_t a, int exponent) {
  if (q < 1) throw std::invalid_argument("ramanujan_C: q must be >= 1");
  if (exponent < 1 || exponent > 3) throw std::invalid_argument("ramanujan_C: exponent in {1,2,3}");
  const PhaseTable phases(q);
  const auto hist = power_residue_histogram(q, exponent);
  return hist_phase_sum(hist, phases, ((a % q) + q) % q);
}

LocalSumEngine::LocalSumEngine(int64_t q) : q_(q), mb_(multiplicative_basics((uint64_t)q)), phases_(q) {
  if (q < 1) throw std::invalid_argument("LocalSumEngine: q must be >= 1");
  if (mb_.mu == 0) throw std::invalid_argument("LocalSumEngine: modulus is not squarefree");
  coprime_ = reduced_residues(q);
  const auto hist2 = power_residue_histogram(q, 2);
  const auto hist3 = power_residue_histogram(q, 3);
  weights_.reserve(coprime_.size());
  for (int64_t a : coprime_) {
    const CInterval c2 = hist_phase_sum(hist2, phases_, a);
    const CInterval c3 = hist_phase_sum(hist3, phases_, a);
    weights_.push_back(c2 * (c3 * c3));
  }
}

Interval LocalSumEngine::A_at(int64_t n) const {
  // Pair a with q - a: the paired terms are complex conjugates, so the sum
  // is accumulated as 2 Re(term) with the imaginary residual kept only as a
  // consistency check.
  Interval acc_re;
  Interval acc_im;
  const int64_t q = q_;
  for (size_t i = 0; i < coprime_.size(); ++i) {
    const int64_t a = coprime_[i];
    const int64_t paired = (q - a) % q;
    if (paired != 0 && a > paired) continue;  // handled with its partner
    const CInterval term = weights_[i] * phases_.at(-(a % q) * (n % q));
    if (paired != 0 && paired != a) {
      acc_re += term.re.mul_ui(2);
      acc_im += term.im - term.im;
    } else {
      // self-paired residue (only a = q for q = 1, or a = q/2 patterns);
      // its exact value is real
      acc_re += term.re;
      acc_im += term.im;
    }
  }
  const double im_mag = std::max(std::abs(acc_im.lo_d()), std::abs(acc_im.hi_d()));
  if (im_mag > imaginary_tolerance()) {
    throw std::runtime_error("A_local: imaginary residual " + std::to_string(im_mag) +
                             " above tolerance for q=" + std::to_string(q_));
  }
  uint64_t phi4 = mb_.phi * mb_.phi;
  phi4 = phi4 * phi4;
  Interval a_val = acc_re.div_ui(phi4);
  return mb_.mu < 0 ? -a_val : a_val;
}

Interval A_local(int64_t n, int64_t q) {
  if (q < 1) throw std::invalid_argument("A_local: q must be >= 1");
  const MultiplicativeBasics mb = multiplicative_basics((uint64_t)q);
  if (mb.mu == 0) return Interval();  // exact zero
  const LocalSumEngine engine(q);
  return engine.A_at(((n % q) + q) % q);
}

LocalFactorRecord local_factor_min(int64_t p) {
  if (p < 3 || !is_prime_u64((uint64_t)p)) {
    throw std::invalid_argument("local_factor_min: p must be a prime >= 3");
  }
  const LocalSumEngine engine(p);
  LocalFactorRecord rec;
  rec.p = p;
  rec.values.reserve((size_t)p);
  for (int64_t n = 1; n <= p; ++n) {
    rec.values.push_back(engine.A_at(n % p).add_ll(1));
  }
  Interval min_enc = rec.values[0];
  Interval max_a = rec.values[0];
  for (const Interval& v : rec.values) {
    min_enc = min_enc.min_with(v);
    max_a = max_a.max_with(v);
  }
  rec.min = min_enc;
  rec.max_A = max_a.sub_ll(1);
  for (int64_t n = 1; n <= p; ++n) {
    const Interval& v = rec.values[(size_t)n - 1];
    if (!v.definitely_gt(min_enc)) rec.tie_set.push_back(n);
  }
  rec.argmin = rec.tie_set.empty() ? 0 : rec.tie_set.front();
  rec.argmin_unique = rec.tie_set.size() == 1;
  return rec;
}

std::vector<int64_t> default_small_prime_set() {
  std::vector<int64_t> out{5, 11};
  for (int64_t p = 17; p <= 199; ++p) {
    if (is_prime_u64((uint64_t)p)) out.push_back(p);
  }
  return out;
}

Interval product_small_primes(const std::vector<int64_t>& primes, unsigned workers) {
  if (primes.empty()) return Interval::exact(1);
  auto minima = parallel_map<Interval>(primes.size(), workers, [&](size_t i) {
    return local_factor_min(primes[i]).min;
  });
  Interval prod = Interval::exact(1);
  for (const Interval& m : minima) prod *= m;  // fixed ascending order
  return prod;
}

Interval tail_abs_bound(int64_t p) {
  const Interval sp = Interval::exact(p).sqrt();
  const Interval num = sp.add_ll(1) * (sp.mul_ui(2).add_ll(1)).square();
  return num / Interval::exact(p - 1).pow_si(3);
}

TailFactor tail_factor(int64_t p) {
  if (p < 5) throw std::invalid_argument("tail_factor: p must be >= 5");
  const int rc = (int)(p % 3);
  if (rc == 0) throw std::invalid_argument("tail_factor: p must not be divisible by 3");
  const Interval sp = Interval::exact(p).sqrt();
  const Interval den = Interval::exact(p - 1).pow_si(3);
  Interval deficit;
  if (rc == 2) {
    deficit = sp.add_ll(1) / den;
  } else {
    deficit = sp.add_ll(1) * (sp.mul_ui(2).add_ll(1)).square() / den;
  }
  return TailFactor{p, rc, Interval::exact(1) - deficit};
}

Interval tail_product(uint64_t lo, uint64_t hi, const PrimeTable& pt, unsigned workers) {
  if (hi > pt.limit + 1) {
    throw std::invalid_argument("tail_product: range end exceeds sieve capacity");
  }
  const auto [b, e] = pt.open_range(lo, hi);
  const size_t count = e - b;
  if (count == 0) return Interval::exact(1);
  // chunked so each task carries a block, reduced in fixed order
  const size_t chunk = 2048;
  const size_t nchunks = (count + chunk - 1) / chunk;
  auto partials = parallel_map<Interval>(nchunks, workers, [&](size_t ci) {
    Interval prod = Interval::exact(1);
    const size_t from = b + ci * chunk;
    const size_t to = std::min(b + (ci + 1) * chunk, e);
    for (size_t i = from; i < to; ++i) {
      prod *= tail_factor((int64_t)pt.primes[i]).bound;
    }
    return prod;
  });
  Interval prod = Interval::exact(1);
  for (const Interval& x : partials) prod *= x;
  return prod;
}

Interval analytic_tail_beyond(uint64_t limit) {
  if (limit < 100) throw std::invalid_argument("analytic_tail_beyond: limit too small");
  // |A(n,p)| <= (1 + p^-1/2)(2 + p^-1/2)^2 (1 - 1/p)^-3 * p^-3/2 and the
  // leading factor g(p) is a product of terms each decreasing in p, so
  // g(p) <= g(limit) for p >= limit.
  const Interval s = Interval::exact_u64(limit).sqrt().recip();  // limit^-1/2
  const Interval one = Interval::exact(1);
  const Interval g = (one + s) * (Interval::exact(2) + s).square() *
                     (one - Interval::exact_u64(limit).recip()).pow_si(-3);
  // sum_{p > limit} p^-3/2 <= integral_{limit}^inf x^-3/2 dx = 2 limit^-1/2
  const Interval deficit = g * s.mul_ui(2);
  if (!deficit.definitely_lt(one)) {
    throw std::runtime_error("analytic_tail_beyond: deficit bound not < 1");
  }
  return one - deficit;
}

ConstantCParts constant_C(const PrimeTable& pt, unsigned workers) {
  ConstantCParts parts;
  parts.small = product_small_primes(default_small_prime_set(), workers);
  parts.mid = tail_product(199, pt.limit, pt, workers);
  parts.beyond_import = Interval::decimal("0.984127");
  parts.beyond_analytic = analytic_tail_beyond(pt.limit);
  parts.value = parts.small * parts.mid * parts.beyond_import;
  parts.value_analytic = parts.small * parts.mid * parts.beyond_analytic;
  return parts;
}

Interval sum_sq_identity(int64_t p) {
  const LocalSumEngine engine(p);
  Interval acc;
  for (int64_t j = 1; j <= p; ++j) acc += engine.A_at(j % p).add_ll(1).square();
  return acc;
}

Interval sum_A(int64_t p) {
  const LocalSumEngine engine(p);
  Interval acc;
  for (int64_t j = 1; j <= p; ++j) acc += engine.A_at(j % p);
  return acc;
}

Interval singular_series_truncated(int64_t n, uint64_t Q, const PrimeTable& pt,
                                   unsigned workers) {
  if (n % 2 != 0) throw std::invalid_argument("singular_series_truncated: n must be even");
  if (Q < 2) throw std::invalid_argument("singular_series_truncated: Q must be >= 2");
  if (Q > pt.limit) throw std::invalid_argument("singular_series_truncated: Q exceeds sieve limit");
  // Explicit local factors for p <= max(Q, 13); the closed forms only give
  // positive bounds from p = 17 on.
  const uint64_t explicit_to = std::max<uint64_t>(Q, 13);
  Interval prod = Interval::exact(1);
  for (uint64_t p : pt.primes) {
    if (p > explicit_to) break;
    prod *= A_local(n, (int64_t)p).add_ll(1);
  }
  // Conservative closed-form tail: the weaker branch applied to every prime.
  const auto [b, e] = pt.open_range(explicit_to, pt.limit + 1);
  const size_t chunk = 2048;
  const size_t count = e - b;
  const size_t nchunks = (count + chunk - 1) / chunk;
  auto partials = parallel_map<Interval>(nchunks, workers, [&](size_t ci) {
    Interval acc = Interval::exact(1);
    const size_t from = b + ci * chunk;
    const size_t to = std::min(b + (ci + 1) * chunk, e);
    for (size_t i = from; i < to; ++i) {
      const int64_t p = (int64_t)pt.primes[i];
      if (p % 3 == 0) continue;  // p = 3 already explicit
      const Interval lo_bound = Interval::exact(1) - tail_abs_bound(p);
      const Interval hi_bound = Interval::exact(1) + tail_abs_bound(p);
      acc *= Interval::span(lo_bound, hi_bound);
    }
    return acc;
  });
  for (const Interval& x : partials) prod *= x;
  // beyond the sieve limit: prod(1 - x_p) >= 1 - D and
  // prod(1 + x_p) <= exp(D) <= 1/(1 - D) for the same deficit sum D
  const Interval beyond_lo = analytic_tail_beyond(pt.limit);
  prod *= Interval::span(beyond_lo, beyond_lo.recip());
  return prod;
}

}  // namespace linnik::series
