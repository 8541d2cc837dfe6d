#pragma once

#include "psum/arith.hpp"

namespace psum {

struct PowerSumQuery {
  Natural m;        // exponent, >= 1
  Natural k;        // upper summation limit, >= 1
  Natural modulus;  // >= 1
};

// S_m(k) mod modulus, term by term with square-and-multiply. Refuses
// k > config().oracle_k_budget ("oracle scale exceeded").
Natural power_sum_naive_mod(const PowerSumQuery& q);

// S_m(p^t) mod p^t by the closed forms:
//   odd p:  -p^(t-1) if (p-1) | m, else 0
//   p = 2:  2^(t-1) if t = 1, or t > 1 with m > 1 even; 0 if t > 1 with m odd > 1;
//           2^(t-1) for the t > 1, m = 1 branch (direct computation; the
//           source lemma's -1 is a typo, see lemma3_deviation_branch)
Natural power_sum_prime_power_mod(const Natural& m, const Natural& p, unsigned t);

// True when (m, p, t) hits the branch where the implementation deliberately
// deviates from the source lemma's stated value (p = 2, t > 1, m = 1).
bool lemma3_deviation_branch(const Natural& m, const Natural& p, unsigned t);

// S_m(d) mod d for any d >= 1: per prime power p^t || d compute
// (d/p^t) * S_m(p^t) mod p^t via the closed forms, recombine by CRT
// (ascending primes).
Natural power_sum_mod_closed(const Natural& m, const Natural& d);

// S_m(m) mod m (power_sum_mod_closed with d = m).
Natural power_sum_self_mod(const Natural& m);

// Fast path for modulus | k: S_m(k) = (k/modulus) * S_m(modulus) (mod modulus).
// Errors when modulus does not divide k.
Natural power_sum_fast_mod(const PowerSumQuery& q);

}  // namespace psum
