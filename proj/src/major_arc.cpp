#include "linnik/major_arc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>
#include <vector>

#include "linnik/parallel.hpp"

namespace linnik::major {

namespace {

// Evaluate `compute` at escalating working precision until `resolve` can
// extract an unambiguous integer from the enclosure.
int64_t resolve_integer(const std::function<Interval()>& compute,
                        const std::function<std::optional<int64_t>(const Interval&)>& resolve,
                        const char* what) {
  const unsigned save = precision_bits();
  for (int attempt = 0; attempt <= 4; ++attempt) {
    Interval x;
    try {
      x = compute();
    } catch (...) {
      set_precision_bits(save);
      throw;
    }
    const auto v = resolve(x);
    if (v) {
      set_precision_bits(save);
      return *v;
    }
    set_precision_bits(precision_bits() * 2);
  }
  set_precision_bits(save);
  throw std::runtime_error(std::string("cannot resolve integer bound for ") + what);
}

// ceil over enclosures: certain once the whole enclosure sits strictly
// inside (f, f+1] for one integer f.
std::optional<int64_t> ceil_of(const Interval& x) {
  const auto f = x.unique_floor();
  if (!f) return std::nullopt;
  if (!x.contains_ll(*f)) return *f + 1;  // lo > f
  return std::nullopt;  // enclosure touches the integer: ambiguous
}

std::optional<int64_t> floor_of(const Interval& x) {
  const auto f = x.unique_floor();
  if (!f) return std::nullopt;
  if (!x.contains_ll(*f + 1)) return *f;  // hi < f+1 follows from unique_floor
  return std::nullopt;
}

Interval pow_neg_two_thirds(const Interval& x) {
  return (x.log() * Interval::ratio(-2, 3)).exp();
}

}  // namespace

FrakJParams FrakJParams::make(uint64_t N, uint64_t n) {
  if (N < 100) throw std::invalid_argument("FrakJParams: N too small");
  if (n < 1 || n > N) throw std::invalid_argument("FrakJParams: need 1 <= n <= N");
  FrakJParams p;
  p.N = N;
  p.n = n;
  // U^3 = 625 N / 10001 exactly; integer bounds by exact integer division
  const unsigned __int128 num = (unsigned __int128)N * 625;
  p.m3_lo = (int64_t)((num + 10000) / 10001);
  p.m3_hi = (int64_t)(((unsigned __int128)N * 5000) / 10001);
  // recomputed from scratch inside the escalation loop so higher precision
  // actually narrows the result
  auto u3 = [N]() { return Interval::exact_u64(N).mul_ui(625).div_ui(10001); };
  auto v3 = [u3]() { return (u3().log() * Interval::ratio(5, 6)).exp(); };
  p.U3 = u3();
  p.V3 = v3();
  p.m4_lo = resolve_integer(v3, ceil_of, "ceil(V^3)");
  p.m4_hi = resolve_integer([v3]() { return v3().mul_ui(8); }, floor_of, "floor(8 V^3)");
  if (p.m4_lo > p.m4_hi || p.m3_lo > p.m3_hi) {
    throw std::runtime_error("FrakJParams: empty dyadic box");
  }
  return p;
}

namespace {

struct ExactSumContext {
  const FrakJParams* p;
  std::vector<Interval> prefix;  // prefix[i] = sum_{m<=i} m^(-1/2)
  std::vector<Interval> w4;      // m4^(-2/3), indexed from m4_lo
  int64_t t_max;                 // largest admissible m2 index

  Interval inner(int64_t t) const {
    // sum over m2 in [max(1, t-N), min(N, t-1)] of m2^(-1/2)
    const int64_t lo = std::max<int64_t>(1, t - (int64_t)p->N);
    const int64_t hi = std::min<int64_t>((int64_t)p->N, t - 1);
    if (hi < lo) return Interval();
    return prefix[(size_t)hi] - prefix[(size_t)(lo - 1)];
  }

  Interval slice(int64_t m3) const {
    Interval acc;
    const Interval w3 = pow_neg_two_thirds(Interval::exact(m3));
    for (int64_t m4 = p->m4_lo; m4 <= p->m4_hi; ++m4) {
      const int64_t t = (int64_t)p->n - m3 - m4;
      if (t < 2) break;  // m4 ascending, t only shrinks
      acc += w4[(size_t)(m4 - p->m4_lo)] * inner(t);
    }
    return w3 * acc;
  }

  // midpoint-recursive reduction; the recursion tree depends only on the
  // range, so any midpoint split of the public range reproduces the sum
  Interval range_sum(int64_t a, int64_t b, int depth, unsigned workers) const {
    if (a == b) return slice(a);
    const int64_t mid = a + (b - a) / 2;
    if (depth > 0 && workers > 1) {
      auto left = std::async(std::launch::async, [&]() {
        return range_sum(a, mid, depth - 1, workers / 2);
      });
      const Interval right = range_sum(mid + 1, b, depth - 1, workers - workers / 2);
      return left.get() + right;
    }
    return range_sum(a, mid, 0, 1) + range_sum(mid + 1, b, 0, 1);
  }
};

ExactSumContext make_context(const FrakJParams& p) {
  if (p.N > 100'000) {
    throw std::invalid_argument(
        "frakJ_exact: N exceeds the exact-sum work bound; use the continuous surrogate");
  }
  ExactSumContext ctx;
  ctx.p = &p;
  ctx.t_max = std::min<int64_t>((int64_t)p.N, (int64_t)p.n - p.m3_lo - p.m4_lo - 1);
  const int64_t pref_to = std::max<int64_t>(ctx.t_max, 1);
  ctx.prefix.reserve((size_t)pref_to + 1);
  ctx.prefix.push_back(Interval());
  for (int64_t m = 1; m <= pref_to; ++m) {
    ctx.prefix.push_back(ctx.prefix.back() + Interval::exact(m).sqrt().recip());
  }
  ctx.w4.reserve((size_t)(p.m4_hi - p.m4_lo + 1));
  for (int64_t m4 = p.m4_lo; m4 <= p.m4_hi; ++m4) {
    ctx.w4.push_back(pow_neg_two_thirds(Interval::exact(m4)));
  }
  return ctx;
}

}  // namespace

Interval frakJ_exact_range(const FrakJParams& p, int64_t m3_from, int64_t m3_to,
                           unsigned workers) {
  if (m3_from < p.m3_lo || m3_to > p.m3_hi || m3_from > m3_to) {
    throw std::invalid_argument("frakJ_exact_range: bad m3 range");
  }
  const ExactSumContext ctx = make_context(p);
  // cap parallel split depth so the task tree stays small
  int depth = 0;
  unsigned w = effective_workers(workers);
  while ((1u << depth) < 4 * w && depth < 8) ++depth;
  return ctx.range_sum(m3_from, m3_to, w > 1 ? depth : 0, w);
}

Interval frakJ_exact(const FrakJParams& p, unsigned workers) {
  if ((int64_t)p.n < p.m3_lo + p.m4_lo + 2) return Interval();  // empty region
  return frakJ_exact_range(p, p.m3_lo, p.m3_hi, workers);
}

namespace {

enum class PsiKind { integral, discrete_hi, discrete_lo };

// increasing-in-y inner weight
Interval psi(PsiKind kind, const Interval& y, uint64_t N) {
  const Interval nN = Interval::exact_u64(N);
  switch (kind) {
    case PsiKind::integral: {
      const Interval x = y.min_with(nN).clamp_min_ll(0);
      return x.sqrt().mul_ui(2);
    }
    case PsiKind::discrete_hi: {
      // Phi(t) <= 2 sqrt(min(N, y-1)) - 1 for y <= t
      const Interval x = y.sub_ll(1).min_with(nN).clamp_min_ll(0);
      return (x.sqrt().mul_ui(2).sub_ll(1)).clamp_min_ll(0);
    }
    case PsiKind::discrete_lo: {
      // Phi(t) >= 2 sqrt(min(N+1, y)) - 2 for y >= t
      const Interval x = y.min_with(nN.add_ll(1)).clamp_min_ll(0);
      return (x.sqrt().mul_ui(2).sub_ll(2)).clamp_min_ll(0);
    }
  }
  return Interval();
}

Interval quadrature(PsiKind kind, const Interval& x3a, const Interval& x3b,
                    const Interval& x4a, const Interval& x4b, uint64_t n, uint64_t N,
                    unsigned cells, unsigned workers) {
  const uint64_t K = cells;
  const Interval dx3 = (x3b - x3a).div_ui(K);
  const Interval dx4 = (x4b - x4a).div_ui(K);
  if (!dx3.strictly_positive() || !dx4.strictly_positive()) {
    throw std::runtime_error("quadrature: degenerate axis");
  }
  std::vector<Interval> w3(K + 1), w4(K + 1), x3(K + 1), x4(K + 1);
  for (uint64_t i = 0; i <= K; ++i) {
    x3[i] = x3a + (x3b - x3a).mul_ui(i).div_ui(K);
    x4[i] = x4a + (x4b - x4a).mul_ui(i).div_ui(K);
    w3[i] = pow_neg_two_thirds(x3[i]);
    w4[i] = pow_neg_two_thirds(x4[i]);
  }
  const Interval n_i = Interval::exact_u64(n);
  // node values, then per-cell corner bounds reduced row by row
  auto rows = parallel_map<std::pair<Interval, Interval>>(K + 1, workers, [&](size_t i) {
    Interval row_head;  // sum over j = 0..K-1 of P[i][j]
    Interval row_tail;  // sum over j = 1..K of P[i][j]
    for (uint64_t j = 0; j <= K; ++j) {
      const Interval y = n_i - x3[i] - x4[j];
      const Interval p_ij = w3[i] * w4[j] * psi(kind, y, N);
      if (j < K) row_head += p_ij;
      if (j > 0) row_tail += p_ij;
    }
    return std::make_pair(row_head, row_tail);
  });
  Interval sum_upper_corners;  // P[i][j] over i,j = 0..K-1 (cell maxima)
  Interval sum_lower_corners;  // P[i+1][j+1] over the same cells (cell minima)
  for (uint64_t i = 0; i < K; ++i) sum_upper_corners += rows[i].first;
  for (uint64_t i = 1; i <= K; ++i) sum_lower_corners += rows[i].second;
  const Interval area = dx3 * dx4;
  const Interval lo_total = sum_lower_corners * area;
  const Interval hi_total = sum_upper_corners * area;
  return Interval::span(lo_total, hi_total);
}

}  // namespace

FrakJContinuous frakJ_continuous(const FrakJParams& p, unsigned cells, unsigned workers) {
  FrakJContinuous out;
  out.cells = cells;
  out.integral = quadrature(PsiKind::integral, p.U3, p.U3.mul_ui(8), p.V3, p.V3.mul_ui(8),
                            p.n, p.N, cells, workers);
  // discrete brackets: region shifted one lattice step outward/inward
  const Interval one = Interval::exact(1);
  out.discrete_hi = quadrature(PsiKind::discrete_hi, Interval::exact(p.m3_lo) - one,
                               Interval::exact(p.m3_hi), Interval::exact(p.m4_lo) - one,
                               Interval::exact(p.m4_hi), p.n, p.N, cells, workers);
  out.discrete_lo = quadrature(PsiKind::discrete_lo, Interval::exact(p.m3_lo),
                               Interval::exact(p.m3_hi) + one, Interval::exact(p.m4_lo),
                               Interval::exact(p.m4_hi) + one, p.n, p.N, cells, workers);
  return out;
}

WindowCheck frakJ_window_check(uint64_t N, const Interval& reference, unsigned cells,
                               unsigned max_cells, unsigned workers) {
  // n in [(1-delta)N, N] with delta = 1e-4; the surrogate integrand
  // increases pointwise with n, so the left edge is the window infimum.
  const uint64_t n_left = (uint64_t)(((unsigned __int128)N * 9999) / 10000);
  WindowCheck out{};
  for (unsigned K = cells;; K *= 2) {
    const FrakJParams left = FrakJParams::make(N, n_left);
    const FrakJParams right = FrakJParams::make(N, N);
    const Interval pow_109_left =
        (Interval::exact_u64(N).log() * Interval::ratio(10, 9)).exp();
    const Interval j_left = frakJ_continuous(left, K, workers).integral;
    const Interval j_right = frakJ_continuous(right, K, workers).integral;
    out.ratio_left = j_left / pow_109_left;
    out.ratio_right = j_right / pow_109_left;
    out.cells_used = K;
    if (out.ratio_left.definitely_ge(reference)) {
      out.decided = true;
      out.pass = true;
      return out;
    }
    if (out.ratio_left.definitely_lt(reference) && out.ratio_right.definitely_lt(reference)) {
      out.decided = true;
      out.pass = false;
      return out;
    }
    if (K >= max_cells) {
      out.decided = false;
      out.pass = false;
      return out;
    }
  }
}

Interval main_term_coefficient(const Interval& pair_floor, const Interval& window_floor) {
  return Interval::ratio(1, 324) * pair_floor * window_floor.square();
}

Interval main_term_coefficient() {
  return main_term_coefficient(Interval::decimal("3.261435"), Interval::decimal("2.338190371"));
}

ParsevalCheck parseval_identity(char which, uint64_t N, const PrimeTable& pt) {
  if (N < 4) throw std::invalid_argument("parseval_identity: N too small");
  if (N > pt.limit * pt.limit) {
    throw std::invalid_argument("parseval_identity: N beyond sieve reach");
  }
  uint64_t cutoff;
  Interval bound;
  const Interval logN = Interval::exact_u64(N).log();
  if (which == 'f') {
    cutoff = N;
    bound = Interval::exact_u64(N) * logN;
  } else if (which == 'g') {
    uint64_t r = (uint64_t)std::sqrt((double)N);
    while (r * r > N) --r;
    while ((r + 1) * (r + 1) <= N) ++r;
    cutoff = r;
    bound = Interval::exact_u64(N).sqrt() * logN;
  } else {
    throw std::invalid_argument("parseval_identity: which must be 'f' or 'g'");
  }
  if (cutoff > pt.limit) throw std::invalid_argument("parseval_identity: cutoff beyond sieve");
  Interval sum;
  for (uint64_t p : pt.primes) {
    if (p > cutoff) break;
    sum += Interval::exact_u64(p).log().square();
  }
  return ParsevalCheck{sum, bound, sum.definitely_le(bound)};
}

G4Moment g4_moment(uint64_t N, const PrimeTable& pt) {
  uint64_t r = (uint64_t)std::sqrt((double)N);
  while (r * r > N) --r;
  while ((r + 1) * (r + 1) <= N) ++r;
  if (r > pt.limit) throw std::invalid_argument("g4_moment: sqrt(N) beyond sieve");
  std::vector<uint64_t> ps;
  for (uint64_t p : pt.primes) {
    if (p > r) break;
    ps.push_back(p);
  }
  std::map<uint64_t, Interval> rm;  // m -> weighted representation count
  for (uint64_t p1 : ps) {
    const Interval l1 = Interval::exact_u64(p1).log();
    for (uint64_t p2 : ps) {
      const uint64_t m = p1 * p1 + p2 * p2;
      rm[m] += l1 * Interval::exact_u64(p2).log();
    }
  }
  G4Moment out;
  for (const auto& [m, w] : rm) out.value += w.square();
  out.normalised = out.value / (Interval::exact_u64(N) * Interval::exact_u64(N).log().square());
  return out;
}

}  // namespace linnik::major
