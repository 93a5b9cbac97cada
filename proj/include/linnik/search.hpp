#pragma once

// Desk-scale witness search for n = p1 + p2^2 + p3^3 + p4^3 + sum 2^{v_j}:
// meet-in-the-middle over a presorted table of p1 + p2^2 values, a shared
// power-multiset pair search, an independent brute-force counting oracle
// and a self-contained witness verifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linnik::search {

struct RepresentationWitness {
  uint64_t n = 0;
  uint64_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  std::vector<unsigned> vs;  // power-of-two exponents, nondecreasing
  bool constrained = false;  // dyadic ranges for p3, p4 and p2 <= sqrt(n)
};

struct PairWitness {
  RepresentationWitness first;   // for the larger target N1
  RepresentationWitness second;  // for the smaller target N2
};

struct SearchParams {
  unsigned k = 0;            // number of powers of two (exact count)
  unsigned L_bound = 40;     // largest admissible exponent
  bool constrained = false;
  size_t table_entry_cap = (size_t)1 << 31;
  uint64_t n_cap = 10'000'000'000ull;
};

struct SearchStats {
  uint64_t probes = 0;       // (p3, p4) residual probes
  uint64_t multisets = 0;    // power multisets enumerated
};

// First witness in the deterministic enumeration order (multisets in
// nondecreasing-sum order, then p3 ascending, p4 ascending, then smallest
// p2). Returns nothing when the space is exhausted.
std::optional<RepresentationWitness> mitm_find(uint64_t n, const SearchParams& params,
                                               SearchStats* stats = nullptr);

// Shared-multiset pair search: iterates multisets of size k with exponents
// <= L_bound in nondecreasing-sum order and requires the same multiset to
// complete both targets.
std::optional<PairWitness> pair_find(uint64_t N1, uint64_t N2, unsigned k, unsigned L_bound,
                                     bool constrained = false, SearchStats* stats = nullptr);

struct VerifyResult {
  bool ok = false;
  std::string defect;  // empty when ok
};

// Deterministic primality plus exact integer arithmetic; independent of the
// search internals.
VerifyResult verify_witness(const RepresentationWitness& w);

// Exact count of representations of n with exactly k powers of two
// (multisets of exponents, ordered prime tuples), n <= 1e4. Quadruple loop;
// the independent oracle for the meet-in-the-middle searcher.
unsigned __int128 brute_oracle(uint64_t n, unsigned k, unsigned L_bound = 13);

// All power multisets of size k with exponents in [1, L_bound] and
// 2-adic sum <= sum_cap, in nondecreasing-(sum, lexicographic) order.
// Rejected when more than max_count multisets would be materialised.
std::vector<std::vector<unsigned>> power_multisets(unsigned k, unsigned L_bound,
                                                   uint64_t sum_cap,
                                                   size_t max_count = (size_t)1 << 22);

}  // namespace linnik::search
