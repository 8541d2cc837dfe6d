#include "psum/nq.hpp"

#include "psum/congruence.hpp"
#include "psum/config.hpp"
#include "psum/powersum.hpp"

namespace psum {

std::string to_string(FailCondition c) {
  switch (c) {
    case FailCondition::i_divisibility:
      return "i_divisibility";
    case FailCondition::i_local_congruence:
      return "i_local_congruence";
    case FailCondition::ii_forbidden_prime:
      return "ii_forbidden_prime";
  }
  return "unknown";
}

MembershipVerdict membership_fast(const Natural& q, const Natural& n) {
  if (q < 1 || n < 1) throw DomainError("q and n must be >= 1");
  MembershipVerdict verdict;
  verdict.q = q;
  verdict.n = n;
  const Natural qn = q * n;
  for (const Natural& p : factorize(q).primes()) {
    if (!mpz_divisible_p(qn.get_mpz_t(), Natural(p - 1).get_mpz_t())) {
      verdict.failing_condition = FailCondition::i_divisibility;
      verdict.witness = p;
      return verdict;
    }
    // q/p + 1 == 0 (mod p); fails automatically when p^2 | q
    Natural local = q / p + 1;
    if (!mpz_divisible_p(local.get_mpz_t(), p.get_mpz_t())) {
      verdict.failing_condition = FailCondition::i_local_congruence;
      verdict.witness = p;
      return verdict;
    }
  }
  for (const Natural& p : factorize(n).primes()) {
    if (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t())) continue;
    if (mpz_divisible_p(qn.get_mpz_t(), Natural(p - 1).get_mpz_t())) {
      verdict.failing_condition = FailCondition::ii_forbidden_prime;
      verdict.witness = p;
      return verdict;
    }
  }
  verdict.member = true;
  return verdict;
}

bool membership_oracle(const Natural& q, const Natural& n) {
  if (q < 1 || n < 1) throw DomainError("q and n must be >= 1");
  const Natural qn = q * n;
  if (!fits_u64(qn) || to_u64(qn) > config().membership_oracle_budget) {
    throw BudgetExceeded("membership oracle budget exceeded");
  }
  const Natural s = power_sum_naive_mod({qn, qn, qn});
  Natural target;
  mpz_mod(target.get_mpz_t(), n.get_mpz_t(), qn.get_mpz_t());
  return s == target;
}

Natural compute_nQ(const Natural& q) {
  if (q < 1) throw DomainError("q must be >= 1");
  if (q == 1) return Natural(1);
  if (!is_weak_primary_pseudoperfect(q)) {
    throw DomainError("q must be 1 or a weak primary pseudoperfect number");
  }
  Natural acc = 1, g, term;
  for (const Natural& p : factorize(q).primes()) {
    term = p - 1;
    mpz_gcd(g.get_mpz_t(), term.get_mpz_t(), q.get_mpz_t());
    term /= g;
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), term.get_mpz_t());
  }
  return acc;
}

EmptinessResult is_NQ_empty(const Natural& q) {
  const Natural nQ = compute_nQ(q);
  const Natural qn = q * nQ;
  for (const Natural& r : factorize(nQ).primes()) {
    if (mpz_divisible_p(q.get_mpz_t(), r.get_mpz_t())) continue;
    if (mpz_divisible_p(qn.get_mpz_t(), Natural(r - 1).get_mpz_t())) {
      return {true, r};
    }
  }
  return {false, std::nullopt};
}

NQProfile nq_profile(const Natural& q) {
  NQProfile profile;
  profile.q = q;
  profile.nQ = compute_nQ(q);
  const EmptinessResult e = is_NQ_empty(q);
  profile.empty = e.empty;
  profile.witness = e.witness;
  if (!e.empty) profile.min_element = profile.nQ;
  return profile;
}

std::vector<std::uint64_t> enumerate_NQ(const Natural& q, std::uint64_t limit) {
  if (q < 1) throw DomainError("q must be >= 1");
  if (limit > config().sieve_limit) throw BudgetExceeded("sieve budget exceeded");
  std::vector<std::uint64_t> out;
  if (q == 1) {
    for (std::uint64_t n = 1; n <= limit; n += 2) out.push_back(n);
    return out;
  }
  if (!is_weak_primary_pseudoperfect(q)) return out;  // condition i unsatisfiable
  const NQProfile profile = nq_profile(q);
  if (profile.empty || !fits_u64(profile.nQ)) return out;
  const std::uint64_t nQ = to_u64(profile.nQ);
  if (nQ > limit) return out;

  const std::vector<std::uint32_t> spf = smallest_prime_factor_sieve(limit);
  const bool q_small = fits_u64(q);
  const std::uint64_t q64 = q_small ? to_u64(q) : 0;
  for (std::uint64_t n = nQ; n <= limit; n += nQ) {
    std::uint64_t v = n;
    bool member = true;
    while (v > 1 && member) {
      const std::uint64_t p = spf[v];
      while (v % p == 0) v /= p;
      const std::uint64_t d = p - 1;
      if (q_small) {
        if (q64 % p == 0) continue;
        if ((q64 % d) * (n % d) % d == 0) member = false;  // (p-1) | qn
      } else {
        if (mpz_divisible_ui_p(q.get_mpz_t(), p)) continue;
        const std::uint64_t qr = mpz_fdiv_ui(q.get_mpz_t(), d);
        if (qr * (n % d) % d == 0) member = false;
      }
    }
    if (member) out.push_back(n);
  }
  return out;
}

}  // namespace psum
