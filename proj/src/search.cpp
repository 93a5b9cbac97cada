#include "linnik/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linnik/arith.hpp"

namespace linnik::search {

namespace {

uint64_t isqrt_u64(uint64_t n) {
  uint64_t r = (uint64_t)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

uint64_t icbrt_u64(uint64_t n) {
  uint64_t r = (uint64_t)std::cbrt((double)n);
  while (r > 0 && r * r * r > n) --r;
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Dyadic window bounds for the constrained mode: p3 in (U, 2U], p4 in
// (V, 2V] with U = (n / (16(1+delta)))^(1/3), V = U^(5/6), delta = 1e-4.
struct DyadicWindow {
  double U, V;
  bool contains_p3(uint64_t p) const { return (double)p > U && (double)p <= 2 * U; }
  bool contains_p4(uint64_t p) const { return (double)p > V && (double)p <= 2 * V; }
};

DyadicWindow dyadic_window(uint64_t n) {
  const double u3 = (double)n * 625.0 / 10001.0;
  const double u = std::cbrt(u3);
  return DyadicWindow{u, std::pow(u, 5.0 / 6.0)};
}

// sorted (p1 + p2^2, p2) pairs for all admissible primes
struct MitmTable {
  std::vector<std::pair<uint64_t, uint32_t>> entries;  // (sum, p2)
  PrimeTable primes;

  // smallest-p2 entry with value r, if any
  std::optional<uint32_t> probe(uint64_t r) const {
    auto it = std::lower_bound(entries.begin(), entries.end(),
                               std::make_pair(r, (uint32_t)0));
    if (it == entries.end() || it->first != r) return std::nullopt;
    return it->second;
  }
};

MitmTable build_table(uint64_t n, const SearchParams& params) {
  if (n > params.n_cap) throw std::invalid_argument("mitm_find: n exceeds the work bound");
  MitmTable t;
  t.primes = sieve_primes(std::max<uint64_t>(n, 2));
  const uint64_t p2_max = isqrt_u64(n);
  for (uint64_t p2 : t.primes.primes) {
    if (p2 > p2_max) break;
    const uint64_t sq = p2 * p2;
    for (uint64_t p1 : t.primes.primes) {
      if (p1 + sq > n) break;
      t.entries.push_back({p1 + sq, (uint32_t)p2});
      if (t.entries.size() > params.table_entry_cap) {
        throw std::invalid_argument("mitm_find: table entry cap exceeded");
      }
    }
  }
  std::sort(t.entries.begin(), t.entries.end());
  return t;
}

// Core search with no powers of two: core = p1 + p2^2 + p3^3 + p4^3. The
// optional dyadic window comes from the full target, not the residual.
std::optional<RepresentationWitness> mitm_core(uint64_t core, const MitmTable& table,
                                               const DyadicWindow* window,
                                               SearchStats* stats) {
  if (core < 22) return std::nullopt;
  const uint64_t p3_max = icbrt_u64(core - 14);  // leave room for 2 + 4 + 8
  for (uint64_t p3 : table.primes.primes) {
    if (p3 > p3_max) break;
    if (window && !window->contains_p3(p3)) continue;
    const uint64_t c3 = p3 * p3 * p3;
    if (c3 + 14 > core) break;
    const uint64_t p4_max = icbrt_u64(core - c3 - 6);
    for (uint64_t p4 : table.primes.primes) {
      if (p4 > p4_max) break;
      if (window && !window->contains_p4(p4)) continue;
      const uint64_t c4 = p4 * p4 * p4;
      if (c3 + c4 + 6 > core) break;
      const uint64_t residual = core - c3 - c4;
      if (stats) stats->probes++;
      const auto p2 = table.probe(residual);
      if (p2) {
        RepresentationWitness w;
        w.n = core;
        w.p2 = *p2;
        w.p1 = residual - (uint64_t)(*p2) * (*p2);
        w.p3 = p3;
        w.p4 = p4;
        w.constrained = window != nullptr;
        return w;
      }
    }
  }
  return std::nullopt;
}

// Nondecreasing exponent tuples whose 2-adic sum stays within the cap. A
// choice of v at one slot forces all later slots to at least v, so the
// minimal completion prunes whole subtrees.
void gen_multisets(unsigned k, unsigned L_bound, uint64_t sum_cap, size_t max_count,
                   std::vector<unsigned>& cur, uint64_t sum,
                   std::vector<std::vector<unsigned>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    if (out.size() > max_count) {
      throw std::invalid_argument("power_multisets: work bound exceeded");
    }
    return;
  }
  const unsigned start = cur.empty() ? 1 : cur.back();
  const uint64_t remaining = k - cur.size();
  for (unsigned v = start; v <= L_bound; ++v) {
    const uint64_t step = (uint64_t)1 << v;
    if (sum > sum_cap || step > (sum_cap - sum) / remaining) break;
    cur.push_back(v);
    gen_multisets(k, L_bound, sum_cap, max_count, cur, sum + step, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<unsigned>> power_multisets(unsigned k, unsigned L_bound,
                                                   uint64_t sum_cap, size_t max_count) {
  std::vector<std::vector<unsigned>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (L_bound < 1 || L_bound > 62) throw std::invalid_argument("power_multisets: bad L_bound");
  std::vector<unsigned> cur;
  cur.reserve(k);
  gen_multisets(k, L_bound, sum_cap, max_count, cur, 0, out);
  // nondecreasing 2-adic sum, ties broken lexicographically
  std::stable_sort(out.begin(), out.end(),
                   [](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
                     uint64_t sa = 0, sb = 0;
                     for (unsigned v : a) sa += (uint64_t)1 << v;
                     for (unsigned v : b) sb += (uint64_t)1 << v;
                     if (sa != sb) return sa < sb;
                     return a < b;
                   });
  return out;
}

std::optional<RepresentationWitness> mitm_find(uint64_t n, const SearchParams& params,
                                               SearchStats* stats) {
  if (n % 2 != 0) throw std::invalid_argument("mitm_find: n must be even");
  if (n < 22) throw std::invalid_argument("mitm_find: n must be at least 22");
  const MitmTable table = build_table(n, params);
  const DyadicWindow window = dyadic_window(n);
  const DyadicWindow* wp = params.constrained ? &window : nullptr;
  if (params.k == 0) {
    return mitm_core(n, table, wp, stats);
  }
  // residual must stay >= the minimal core 22
  if (n < 22 + 2ull * params.k) return std::nullopt;
  const auto multisets = power_multisets(params.k, params.L_bound, n - 22);
  for (const auto& vs : multisets) {
    uint64_t sum = 0;
    for (unsigned v : vs) sum += (uint64_t)1 << v;
    if (stats) stats->multisets++;
    auto w = mitm_core(n - sum, table, wp, stats);
    if (w) {
      w->n = n;
      w->vs = vs;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<PairWitness> pair_find(uint64_t N1, uint64_t N2, unsigned k, unsigned L_bound,
                                     bool constrained, SearchStats* stats) {
  if (N1 <= N2) throw std::invalid_argument("pair_find: need N1 > N2");
  if (N1 % 2 != 0 || N2 % 2 != 0) throw std::invalid_argument("pair_find: targets must be even");
  SearchParams params;
  params.constrained = constrained;
  const MitmTable table = build_table(N1, params);
  const DyadicWindow window1 = dyadic_window(N1);
  const DyadicWindow window2 = dyadic_window(N2);
  const DyadicWindow* wp1 = constrained ? &window1 : nullptr;
  const DyadicWindow* wp2 = constrained ? &window2 : nullptr;
  // pruning: never probe a multiset whose sum exceeds N2 - 22
  if (N2 < 22) return std::nullopt;
  const auto multisets = power_multisets(k, L_bound, N2 - 22);
  for (const auto& vs : multisets) {
    uint64_t sum = 0;
    for (unsigned v : vs) sum += (uint64_t)1 << v;
    if (stats) stats->multisets++;
    auto w1 = mitm_core(N1 - sum, table, wp1, stats);
    if (!w1) continue;
    auto w2 = mitm_core(N2 - sum, table, wp2, stats);
    if (!w2) continue;
    w1->n = N1;
    w1->vs = vs;
    w2->n = N2;
    w2->vs = vs;
    return PairWitness{*w1, *w2};
  }
  return std::nullopt;
}

VerifyResult verify_witness(const RepresentationWitness& w) {
  for (auto [p, label] : {std::pair<uint64_t, const char*>{w.p1, "p1"},
                          {w.p2, "p2"},
                          {w.p3, "p3"},
                          {w.p4, "p4"}}) {
    if (!is_prime_u64(p)) return {false, std::string("composite ") + label};
  }
  unsigned __int128 sum = (unsigned __int128)w.p1 + (unsigned __int128)w.p2 * w.p2 +
                          (unsigned __int128)w.p3 * w.p3 * w.p3 +
                          (unsigned __int128)w.p4 * w.p4 * w.p4;
  for (unsigned v : w.vs) {
    if (v < 1 || v > 62) return {false, "exponent out of range"};
    sum += (unsigned __int128)1 << v;
  }
  if (sum != (unsigned __int128)w.n) return {false, "sum mismatch"};
  if (w.constrained) {
    const DyadicWindow window = dyadic_window(w.n);
    if (!window.contains_p3(w.p3)) return {false, "p3 outside dyadic range"};
    if (!window.contains_p4(w.p4)) return {false, "p4 outside dyadic range"};
    if (w.p2 > isqrt_u64(w.n)) return {false, "p2 above sqrt bound"};
  }
  return {true, ""};
}

unsigned __int128 brute_oracle(uint64_t n, unsigned k, unsigned L_bound) {
  if (n > 10'000) throw std::invalid_argument("brute_oracle: n must be <= 1e4");
  const PrimeTable pt = sieve_primes(std::max<uint64_t>(n, 2));
  const auto multisets = power_multisets(k, L_bound, n >= 22 ? n - 22 : 0);
  unsigned __int128 count = 0;
  for (const auto& vs : multisets) {
    uint64_t sum = 0;
    for (unsigned v : vs) sum += (uint64_t)1 << v;
    if (sum + 22 > n) continue;
    const uint64_t m = n - sum;
    for (uint64_t p3 : pt.primes) {
      const uint64_t c3 = p3 * p3 * p3;
      if (c3 + 14 > m) break;
      for (uint64_t p4 : pt.primes) {
        const uint64_t c4 = p4 * p4 * p4;
        if (c3 + c4 + 6 > m) break;
        for (uint64_t p2 : pt.primes) {
          const uint64_t sq = p2 * p2;
          if (c3 + c4 + sq + 2 > m) break;
          const uint64_t p1 = m - c3 - c4 - sq;
          if (pt.contains(p1)) ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace linnik::search
