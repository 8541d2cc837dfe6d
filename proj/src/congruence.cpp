#include "psum/congruence.hpp"

#include <cstdint>

#include "psum/config.hpp"
#include "psum/powersum.hpp"

namespace psum {

namespace {

Natural witness_sum_of(const Natural& n) {
  Natural acc = 1;
  for (const Natural& p : factorize(n).primes()) acc += n / p;
  return acc;
}

}  // namespace

bool is_primary_pseudoperfect(const Natural& n) {
  if (n < 2) throw DomainError("primary pseudoperfect numbers require n >= 2");
  return witness_sum_of(n) == n;
}

bool is_weak_primary_pseudoperfect(const Natural& n) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n == 1) return true;  // mod-1 congruence is vacuous
  return mpz_divisible_p(witness_sum_of(n).get_mpz_t(), n.get_mpz_t());
}

PseudoperfectReport pseudoperfect_check(const Natural& n) {
  if (n < 1) throw DomainError("n must be >= 1");
  PseudoperfectReport report;
  report.n = n;
  report.witness_sum = witness_sum_of(n);
  report.is_weak =
      n == 1 ||
      mpz_divisible_p(report.witness_sum.get_mpz_t(), n.get_mpz_t());
  report.is_primary = n >= 2 && report.witness_sum == n;
  return report;
}

std::vector<std::uint64_t> search_pseudoperfect(std::uint64_t limit, bool weak) {
  if (limit > config().search_budget) throw BudgetExceeded("search budget exceeded");
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  const std::vector<std::uint32_t> spf = smallest_prime_factor_sieve(limit);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    std::uint64_t acc = 1, v = n;
    while (v > 1) {
      const std::uint64_t p = spf[v];
      acc += n / p;
      while (v % p == 0) v /= p;
    }
    if (weak ? acc % n == 0 : acc == n) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> closed_prime_fixpoint(std::uint64_t limit) {
  if (limit < 2) throw DomainError("limit must be >= 2");
  if (limit > config().search_budget) throw BudgetExceeded("search budget exceeded");
  const std::vector<std::uint32_t> spf = smallest_prime_factor_sieve(limit);
  std::vector<bool> in_set(limit + 1, false);
  std::vector<std::uint64_t> out;
  in_set[2] = true;
  out.push_back(2);
  // one ascending pass reaches the fixpoint: p's fate depends only on
  // primes dividing p - 1, all smaller than p
  for (std::uint64_t p = 3; p <= limit; ++p) {
    if (spf[p] != p) continue;  // composite
    std::uint64_t v = p - 1;
    bool ok = true;
    while (v > 1 && ok) {
      const std::uint64_t r = spf[v];
      v /= r;
      if (v % r == 0 || !in_set[r]) ok = false;  // square factor or outsider
    }
    if (ok) {
      in_set[p] = true;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::uint64_t> closed_squarefree_fixpoint(std::uint64_t limit) {
  if (limit < 1) throw DomainError("limit must be >= 1");
  if (limit > config().search_budget) throw BudgetExceeded("search budget exceeded");
  const std::vector<std::uint32_t> spf = smallest_prime_factor_sieve(limit);
  std::vector<std::uint64_t> out{1};
  for (std::uint64_t n = 2; n <= limit; ++n) {
    std::uint64_t v = n;
    bool ok = true;
    while (v > 1 && ok) {
      const std::uint64_t p = spf[v];
      v /= p;
      if (v % p == 0 || n % (p - 1) != 0) ok = false;
    }
    if (ok) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> special_set_S(std::uint64_t limit) {
  if (limit > config().search_budget) throw BudgetExceeded("search budget exceeded");
  std::vector<std::uint64_t> out;
  if (limit >= 1) out.push_back(1);
  if (limit < 2) return out;
  for (std::uint64_t m = 2; m <= limit; ++m) {
    if (power_sum_self_mod(Natural(m)) == 1) out.push_back(m);
  }
  return out;
}

}  // namespace psum
