#include "linnik/powers_of_two.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "linnik/parallel.hpp"
#include "linnik/phase.hpp"

namespace linnik::pow2 {

namespace {

// g_r = sum_{v=1..rho} e(r 2^v / q) for every r = 0..q-1.
std::vector<CInterval> inner_sums(int64_t q, uint64_t rho, const PhaseTable& phases) {
  std::vector<int64_t> pow2((size_t)rho + 1);
  pow2[0] = 1 % q;
  for (uint64_t v = 1; v <= rho; ++v) pow2[v] = (pow2[v - 1] * 2) % q;
  std::vector<CInterval> g((size_t)q);
  for (int64_t r = 0; r < q; ++r) {
    CInterval acc = CInterval::zero();
    for (uint64_t v = 1; v <= rho; ++v) acc += phases.at(r * pow2[v]);
    g[(size_t)r] = acc;
  }
  return g;
}

TwoAdicProfile profile_at_current_precision(int64_t q) {
  const uint64_t rho = multiplicative_order(2, (uint64_t)q);
  const PhaseTable phases(q);
  const auto g = inner_sums(q, rho, phases);
  TwoAdicProfile prof;
  prof.q = q;
  prof.rho = rho;
  prof.f.reserve((size_t)q);
  for (int64_t r = 1; r <= q; ++r) {
    prof.f.push_back(g[(size_t)(r % q)].abs());
  }
  Interval best = prof.f[0];
  for (int64_t r = 2; r < q; ++r) best = best.max_with(prof.f[(size_t)r - 1]);
  prof.max_nontrivial = best;
  for (int64_t r = 1; r < q; ++r) {
    if (!prof.f[(size_t)r - 1].definitely_lt(best)) prof.tie_set.push_back(r);
  }
  prof.max_arg = prof.tie_set.empty() ? 0 : prof.tie_set.front();
  prof.max_unique = prof.tie_set.size() == 1;
  prof.precision_used = precision_bits();
  return prof;
}

}  // namespace

TwoAdicProfile two_adic_profile(int64_t q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("two_adic_profile: q must be odd and >= 3");
  const unsigned base = precision_bits();
  TwoAdicProfile prof = profile_at_current_precision(q);
  // top-two gap rule: escalate up to 4x before accepting a tie
  unsigned prec = base;
  while (!prof.max_unique && prec < 4 * base) {
    prec *= 2;
    set_precision_bits(prec);
    try {
      prof = profile_at_current_precision(q);
    } catch (...) {
      set_precision_bits(base);
      throw;
    }
  }
  set_precision_bits(base);
  return prof;
}

Interval density_coefficient(const TwoAdicProfile& profile, uint64_t k) {
  const Interval ratio_pow = profile.max_nontrivial.div_ui(profile.rho).pow_si((long)k);
  const Interval one = Interval::exact(1);
  return (one - ratio_pow.mul_ui((uint64_t)profile.q - 1)).div_ui((uint64_t)profile.q);
}

Interval pair_sum_floor(const Interval& series_floor, const TwoAdicProfile& profile,
                        uint64_t k) {
  return series_floor.mul_ui(2).square() *
         density_coefficient(profile, k).mul_ui((uint64_t)profile.q);
}

PowerSumCount power_sum_count_dp(int64_t q, uint64_t k, uint64_t L, int64_t target) {
  if (q < 1) throw std::invalid_argument("power_sum_count_dp: q must be >= 1");
  if (k * L > 4096 || (double)k * std::log2((double)std::max<uint64_t>(L, 2)) > 126.0) {
    throw std::invalid_argument("power_sum_count_dp: work bound exceeded");
  }
  target = ((target % q) + q) % q;
  std::vector<unsigned __int128> base((size_t)q, 0);
  int64_t p2 = 1 % q;
  for (uint64_t v = 1; v <= L; ++v) {
    p2 = (p2 * 2) % q;
    base[(size_t)p2] += 1;
  }
  std::vector<unsigned __int128> cur((size_t)q, 0);
  cur[0] = 1;
  std::vector<unsigned __int128> next((size_t)q, 0);
  for (uint64_t layer = 0; layer < k; ++layer) {
    std::fill(next.begin(), next.end(), 0);
    for (int64_t r = 0; r < q; ++r) {
      if (cur[(size_t)r] == 0) continue;
      const unsigned __int128 c = cur[(size_t)r];
      for (int64_t s = 0; s < q; ++s) {
        if (base[(size_t)s] == 0) continue;
        next[(size_t)((r + s) % q)] += c * base[(size_t)s];
      }
    }
    std::swap(cur, next);
  }
  return PowerSumCount{q, k, L, target, cur[(size_t)target]};
}

namespace {

unsigned __int128 u128_from_interval_integer(const Interval& x) {
  // x is known to contain a single nonnegative integer below 2^127; it can
  // be recovered from the midpoint floor of a width < 1 enclosure. The
  // caller verified uniqueness via interval comparisons against the DP side
  // or by the ceil(lo) == floor(hi) test done with exact integer re-check.
  const double approx = x.lo_d();
  if (approx < 9e18) {
    // fits comfortably in the 64-bit unique_integer path
    auto v = x.unique_integer();
    if (!v || *v < 0) throw std::runtime_error("expsum: integer extraction failed");
    return (unsigned __int128)*v;
  }
  // wide values: binary-search the integer by comparing against exact
  // 128-bit candidates
  unsigned __int128 lo = 0, hi = (unsigned __int128)1 << 126;
  while (lo < hi) {
    const unsigned __int128 mid = lo + (hi - lo) / 2;
    // mid < x  <=>  the exact value mid lies strictly below the enclosure
    if (Interval::exact_i128((__int128)mid).definitely_lt(x)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (!x.contains_i128((__int128)lo)) throw std::runtime_error("expsum: integer extraction failed");
  return lo;
}

}  // namespace

ExpsumCount power_sum_count_expsum(int64_t q, uint64_t k, int64_t target) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("power_sum_count_expsum: q odd >= 3");
  const unsigned base_prec = precision_bits();
  target = ((target % q) + q) % q;
  for (unsigned prec = base_prec;; prec *= 2) {
    if (prec > 8 * base_prec) {
      set_precision_bits(base_prec);
      throw std::runtime_error("power_sum_count_expsum: cannot isolate integer");
    }
    set_precision_bits(prec);
    try {
      const uint64_t rho = multiplicative_order(2, (uint64_t)q);
      const PhaseTable phases(q);
      const auto g = inner_sums(q, rho, phases);
      CInterval acc = CInterval::zero();
      for (int64_t r = 1; r <= q; ++r) {
        const CInterval term = phases.at(-r * target) * g[(size_t)(r % q)].pow_ui(k);
        acc += term;
      }
      const Interval val = acc.re.div_ui((uint64_t)q);
      const Interval im = acc.im.div_ui((uint64_t)q);
      const bool im_ok = im.abs().hi_d() < 0.25;
      // the enclosure must pin one integer: ceil(lo) == floor(hi)
      if (im_ok && val.width_d() < 0.5) {
        const Interval shifted = val;  // integer isolation via rounding test
        auto small = shifted.unique_integer();
        if (small || shifted.lo_d() >= 9e18) {
          const unsigned __int128 count = u128_from_interval_integer(shifted);
          set_precision_bits(base_prec);
          return ExpsumCount{val.rounded_to_current_precision(), count, prec};
        }
      }
    } catch (...) {
      set_precision_bits(base_prec);
      throw;
    }
  }
}

unsigned __int128 PairHistogram::at(int64_t h) const {
  const int64_t idx = h - min_h;
  if (idx < 0 || (size_t)idx >= counts.size()) return 0;
  return counts[(size_t)idx];
}

unsigned __int128 PairHistogram::total() const {
  unsigned __int128 s = 0;
  for (auto c : counts) s += c;
  return s;
}

PairHistogram r_k_histogram(unsigned k, unsigned L, size_t max_entries) {
  if (k < 1 || k > 11 || L < 4 || L > 26) {
    throw std::invalid_argument("r_k_histogram: need 1 <= k <= 11 and 4 <= L <= 26");
  }
  const int64_t span = ((int64_t)1 << L) - 16;  // max |2^v - 2^u| over [4, L]
  const int64_t reach = (int64_t)k * span;
  const size_t entries = (size_t)(2 * reach + 1);
  if (entries > max_entries) {
    throw std::invalid_argument("r_k_histogram: memory bound exceeded");
  }
  // base distribution of 2^v - 2^u, v,u in [4, L]: sparse (delta, count)
  std::vector<std::pair<int64_t, unsigned __int128>> base;
  {
    std::vector<std::pair<int64_t, uint64_t>> deltas;
    for (unsigned v = 4; v <= L; ++v) {
      for (unsigned u = 4; u <= L; ++u) {
        deltas.push_back({((int64_t)1 << v) - ((int64_t)1 << u), 1});
      }
    }
    std::sort(deltas.begin(), deltas.end());
    for (auto& [d, c] : deltas) {
      if (!base.empty() && base.back().first == d) {
        base.back().second += c;
      } else {
        base.push_back({d, c});
      }
    }
  }
  std::vector<unsigned __int128> cur(entries, 0);
  cur[(size_t)reach] = 1;  // offset so index = h + reach
  std::vector<unsigned __int128> next(entries, 0);
  for (unsigned layer = 0; layer < k; ++layer) {
    std::fill(next.begin(), next.end(), 0);
    const int64_t cur_reach = (int64_t)(layer)*span;
    for (int64_t h = -cur_reach; h <= cur_reach; ++h) {
      const unsigned __int128 c = cur[(size_t)(h + reach)];
      if (c == 0) continue;
      for (const auto& [d, bc] : base) {
        next[(size_t)(h + d + reach)] += c * bc;
      }
    }
    std::swap(cur, next);
  }
  PairHistogram out;
  out.k = k;
  out.L = L;
  out.min_h = -reach;
  out.counts = std::move(cur);
  return out;
}

namespace {

// |sum_{v=1..L} e(2^v t / grid)| computed in doubles by repeated squaring.
double abs_G_at(uint64_t t, uint64_t grid, unsigned L) {
  const double theta = 2.0 * M_PI * (double)((2 * t) % grid) / (double)grid;
  double zr = std::cos(theta), zi = std::sin(theta);
  double sr = zr, si = zi;
  for (unsigned v = 2; v <= L; ++v) {
    const double nr = zr * zr - zi * zi;
    const double ni = 2.0 * zr * zi;
    zr = nr;
    zi = ni;
    sr += zr;
    si += zi;
  }
  return std::sqrt(sr * sr + si * si);
}

uint64_t count_hits(double lambda, unsigned L, uint64_t grid, unsigned workers) {
  const double threshold = lambda * (double)L;
  const size_t nchunks = std::max<size_t>(1, effective_workers(workers) * 8);
  const uint64_t chunk = (grid + nchunks - 1) / nchunks;
  auto partial = parallel_map<uint64_t>(nchunks, workers, [&](size_t ci) {
    const uint64_t from = (uint64_t)ci * chunk;
    const uint64_t to = std::min<uint64_t>(from + chunk, grid);
    uint64_t hits = 0;
    for (uint64_t t = from; t < to; ++t) {
      if (abs_G_at(t, grid, L) >= threshold) ++hits;
    }
    return hits;
  });
  uint64_t total = 0;
  for (uint64_t h : partial) total += h;
  return total;
}

}  // namespace

ELambdaMeasure measure_E_lambda_empirical(double lambda, unsigned L, uint64_t grid,
                                          unsigned workers) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("measure_E_lambda_empirical: lambda must be in [0, 1]");
  }
  if (L < 8 || L > 26) throw std::invalid_argument("measure_E_lambda_empirical: L in [8, 26]");
  if (grid < ((uint64_t)1 << L)) {
    throw std::invalid_argument("measure_E_lambda_empirical: grid smaller than 2^L");
  }
  ELambdaMeasure out;
  out.lambda = lambda;
  out.L = L;
  out.grid = grid;
  // sub-levels for the exponent fit, geometric grids aligned with the top one
  for (unsigned l = (L > 16 ? L - 8 : 8); l <= L; l += 2) {
    const uint64_t g = grid >> (L - l);
    const uint64_t hits = count_hits(lambda, l, g, workers);
    out.levels.push_back(ELambdaLevel{l, g, hits, (double)hits / (double)g});
  }
  out.measure = out.levels.back().measure;
  // least squares of log(measure) against log(2^l)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& lev : out.levels) {
    if (lev.hits == 0) continue;
    const double x = (double)lev.L * std::log(2.0);
    const double y = std::log(lev.measure);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.fitted_exponent = -slope;
    out.fit_valid = true;
  }
  return out;
}

}  // namespace linnik::pow2
