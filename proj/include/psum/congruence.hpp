#pragma once

#include <cstdint>
#include <vector>

#include "psum/arith.hpp"

namespace psum {

struct PseudoperfectReport {
  Natural n;
  bool is_primary = false;  // 1 + sum_{p|n} n/p == n exactly
  bool is_weak = false;     // 1 + sum_{p|n} n/p == 0 (mod n)
  Natural witness_sum{0};   // exact value of 1 + sum_{p|n} n/p
};

// 1/n + sum_{p|n} 1/p = 1, i.e. 1 + sum_{p|n} n/p == n. Requires n >= 2.
bool is_primary_pseudoperfect(const Natural& n);

// Weak variant: 1 + sum_{p|n} n/p == 0 (mod n). n = 1 qualifies vacuously.
bool is_weak_primary_pseudoperfect(const Natural& n);

PseudoperfectReport pseudoperfect_check(const Natural& n);

// All primary (weak = false) or weak primary (weak = true) pseudoperfect
// numbers in [2, limit], ascending, via a smallest-prime-factor sieve.
// limit <= config().sieve_limit.
std::vector<uint64_t> search_pseudoperfect(uint64_t limit, bool weak);

// Largest set of primes <= limit seeded with 2 and closed under: p joins iff
// p - 1 is square-free and every prime q | p - 1 is already in the set.
std::vector<uint64_t> closed_prime_fixpoint(uint64_t limit);

// All square-free v <= limit with p | v implying (p - 1) | v.
std::vector<uint64_t> closed_squarefree_fixpoint(uint64_t limit);

// The set {m <= limit : S_m(m) == 1 (mod m)}, ascending; m = 1 included.
std::vector<uint64_t> special_set_S(uint64_t limit);

}  // namespace psum
