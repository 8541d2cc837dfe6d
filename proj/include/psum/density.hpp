#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psum/arith.hpp"

namespace psum {

// One arithmetic progression family K*t (all positive multiples of t), with
// the generating triple kept for provenance: divisor d | q, prime p, and the
// W-tag from the source decomposition (Wd for nQ = 1, W1/W2 for the split
// cases, depending on whether nQ already divides p(p-1)/d).
struct ProgressionEntry {
  Natural modulus;
  Natural d;
  Natural p;
  std::string tag;  // "Wd", "W1", or "W2"
};

struct ProgressionFamily {
  Natural q;
  Natural nQ;
  uint64_t prime_count = 0;
  std::vector<ProgressionEntry> entries;  // ascending modulus after reduction

  std::vector<Natural> moduli() const;
};

// Moduli M(q,d,p) = (nQ/D) * p(p-1)/d with D = gcd(nQ, p(p-1)/d), over the
// first prime_count primes p with p not dividing q and each d | q with
// d | p-1. Errors when N_q is empty (or q is not weak-PPP / 1).
ProgressionFamily complement_moduli(const Natural& q, uint64_t prime_count);

// Drops every modulus that is a multiple of a distinct smaller modulus; the
// union of progressions is unchanged.
ProgressionFamily primitive_reduce(const ProgressionFamily& family);
std::vector<Natural> primitive_reduce(std::vector<Natural> moduli);

// Exact density of the union of all K*t progressions by inclusion-exclusion:
// sum over non-empty subsets T of (-1)^(|T|+1)/lcm(T), as a depth-first walk
// over descending moduli with divisibility collapse of absorbed subtrees.
// Visited-node budget from config().ie_node_budget.
Ratio union_density_exact(const std::vector<Natural>& moduli);
Ratio union_density_exact(const ProgressionFamily& family);

// Two rigorous upper bounds for the density mass of the complement families
// beyond the first prime_count primes, truncated at extension_cutoff:
//   plain:  sum of d/(p(p-1)) over primes p_{prime_count} < p <= cutoff with
//           d | q, d | p-1, p not dividing q, plus the closing remainder
//           sum_{d|q} d/cutoff (from sum_{n>P} 1/(n(n-1)) = 1/P)
//   pruned: same skeleton, tightened term by term: families whose modulus is
//           absorbed by the finite part contribute 0; only the maximal
//           d = gcd(q, p-1) survives per prime (smaller d give coarser
//           progressions contained in the maximal one); the closing remainder
//           closes each surviving divisor class at its own first uncovered
//           prime index instead of cutoff.
// Both are valid upper bounds; pruned is the default and is the calibrated
// method behind the published-style bound tables.
enum class TailMethod { pruned, plain };

std::string to_string(TailMethod m);

Ratio tail_upper_bound(const Natural& q, uint64_t prime_count,
                       uint64_t extension_cutoff,
                       TailMethod method = TailMethod::pruned);

struct DensityBounds {
  Natural q;
  Natural nQ;
  Ratio lower;        // 1/nQ - union_exact - tail
  Ratio upper;        // 1/nQ - union_exact
  uint64_t prime_cutoff_index = 0;
  uint64_t tail_cutoff = 0;
  std::string tail_method;
  Ratio union_exact;
  Ratio tail_value;
};

// Exact-rational density bounds for N_q. Errors for empty N_q and refuses
// the 31-digit weak-PPP (its 2048-divisor complement family is out of scope;
// only theoretical_lower_bound and the trivial 1/nQ upper bound apply).
DensityBounds density_bounds(const Natural& q, uint64_t prime_count,
                             uint64_t extension_cutoff,
                             TailMethod method = TailMethod::pruned);

// |N_q intersect [1, limit]| / limit via enumerate_NQ.
Ratio empirical_density(const Natural& q, uint64_t limit);

// (1/(q*nQ)) * (0.5/log y - 2*tau(q*nQ)/y), with log y evaluated upward at
// 128-bit precision so the Ratio is a valid lower bound for the density.
// Requires N_q non-empty, y >= 286 and y >= q*nQ.
Ratio theoretical_lower_bound(const Natural& q, const Natural& y);

// Directed-rounded partial sum of 1/(p(p-1)) over primes p <= cutoff plus the
// rigorous remainder 1/cutoff; contains() tests membership of a candidate
// value for the full constant.
struct ConstantCheck {
  Ratio partial_lo;
  Ratio partial_hi;
  Ratio remainder_hi;
  bool contains(const Ratio& c) const;
};

ConstantCheck prime_reciprocal_sum_interval(uint64_t cutoff);

// Decimal rendering with directed rounding: value truncated (down) or padded
// (up) so the printed decimal is itself a valid bound on the exact Ratio.
std::string decimal_lower(const Ratio& value, int digits);
std::string decimal_upper(const Ratio& value, int digits);

}  // namespace psum
