#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psum/arith.hpp"

namespace psum {

// Failure modes of the two-condition membership characterization:
//   i_divisibility:     some prime p | q has (p-1) not dividing qn
//   i_local_congruence: some prime p | q has q/p + 1 != 0 (mod p)
//                       (also the verdict for non-square-free q)
//   ii_forbidden_prime: some prime p | n with p not dividing q has (p-1) | qn
enum class FailCondition { i_divisibility, i_local_congruence, ii_forbidden_prime };

std::string to_string(FailCondition c);

struct MembershipVerdict {
  Natural q;
  Natural n;
  bool member = false;
  std::optional<FailCondition> failing_condition;
  std::optional<Natural> witness;  // smallest failing prime, conditions i then ii
};

// Theorem-4 membership test: n in N_q iff
//   (i)  every prime p | q satisfies (p-1) | qn and q/p + 1 == 0 (mod p), and
//   (ii) every prime p | n with p not dividing q has (p-1) not dividing qn.
// Accepts arbitrary q >= 1, n >= 1; the conditions themselves reject
// non-square-free q.
MembershipVerdict membership_fast(const Natural& q, const Natural& n);

// Zero-theory check of S_{qn}(qn) == n (mod qn) via the naive power-sum
// oracle. Requires q*n <= config().membership_oracle_budget.
bool membership_oracle(const Natural& q, const Natural& n);

// The minimal candidate of Eq. (7): lcm{(p-1)/gcd(p-1, q) : p | q}, or 1 for
// q = 1. Errors unless q is a weak primary pseudoperfect number (or 1).
Natural compute_nQ(const Natural& q);

struct EmptinessResult {
  bool empty = false;
  std::optional<Natural> witness;  // smallest prime r | nQ, r coprime to q,
                                   // with (r-1) | q*nQ
};

// N_q is empty iff some prime r | nQ with r not dividing q has (r-1) | q*nQ.
// (The coprimality requirement keeps the witness meaningful: primes shared
// with q escape condition ii, and r = 1 trivialities never force emptiness.)
EmptinessResult is_NQ_empty(const Natural& q);

struct NQProfile {
  Natural q;
  Natural nQ;
  bool empty = false;
  std::optional<Natural> min_element;  // = nQ when non-empty
  std::optional<Natural> witness;      // emptiness witness prime
};

NQProfile nq_profile(const Natural& q);

// Ascending n <= limit with n in N_q. Sieve-backed: condition i is resolved
// once per q (weak-PPP + nQ | n), condition ii walks the smallest-prime-factor
// sieve. limit <= config().sieve_limit.
std::vector<uint64_t> enumerate_NQ(const Natural& q, uint64_t limit);

}  // namespace psum
