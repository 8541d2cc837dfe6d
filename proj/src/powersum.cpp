#include "psum/powersum.hpp"

#include "psum/config.hpp"

namespace psum {

namespace {

void validate(const PowerSumQuery& q) {
  if (q.m < 1) throw DomainError("exponent m must be >= 1");
  if (q.k < 1) throw DomainError("limit k must be >= 1");
  if (q.modulus < 1) throw DomainError("modulus must be >= 1");
}

// base^m mod mod with 32-bit mod (products fit in 64 bits)
std::uint64_t pow_mod_u64(std::uint64_t base, const Natural& m,
                          std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  base %= mod;
  const mp_bitcnt_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (mp_bitcnt_t i = bits; i-- > 0;) {
    result = result * result % mod;
    if (mpz_tstbit(m.get_mpz_t(), i)) result = result * base % mod;
  }
  return result;
}

}  // namespace

Natural power_sum_naive_mod(const PowerSumQuery& q) {
  validate(q);
  if (!fits_u64(q.k) || to_u64(q.k) > config().oracle_k_budget) {
    throw BudgetExceeded("oracle scale exceeded");
  }
  const std::uint64_t k = to_u64(q.k);
  if (mpz_sizeinbase(q.modulus.get_mpz_t(), 2) <= 32) {
    const std::uint64_t mod = to_u64(q.modulus);
    std::uint64_t acc = 0;
    for (std::uint64_t j = 1; j <= k; ++j) {
      acc = (acc + pow_mod_u64(j, q.m, mod)) % mod;
    }
    return Natural(acc);
  }
  Natural acc = 0, term, base;
  for (std::uint64_t j = 1; j <= k; ++j) {
    base = j;
    mpz_powm(term.get_mpz_t(), base.get_mpz_t(), q.m.get_mpz_t(),
             q.modulus.get_mpz_t());
    acc += term;
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), q.modulus.get_mpz_t());
  }
  return acc;
}

bool lemma3_deviation_branch(const Natural& m, const Natural& p, unsigned t) {
  return p == 2 && t > 1 && m == 1;
}

Natural power_sum_prime_power_mod(const Natural& m, const Natural& p,
                                  unsigned t) {
  if (m < 1) throw DomainError("exponent m must be >= 1");
  if (t < 1) throw DomainError("prime-power exponent t must be >= 1");
  if (!is_prime(p).prime) throw DomainError("p must be prime");

  Natural pt;
  mpz_pow_ui(pt.get_mpz_t(), p.get_mpz_t(), t);
  if (p == 2) {
    if (t == 1) return Natural(1);
    // t > 1: 2^(t-1) for m = 1 (direct computation; source lemma's -1 is a
    // typo) and for even m > 1; 0 for odd m > 1
    if (m == 1 || mpz_even_p(m.get_mpz_t())) return pt / 2;
    return Natural(0);
  }
  if (mpz_divisible_p(m.get_mpz_t(), Natural(p - 1).get_mpz_t())) {
    return pt - pt / p;  // -p^(t-1) mod p^t
  }
  return Natural(0);
}

Natural power_sum_mod_closed(const Natural& m, const Natural& d) {
  if (m < 1) throw DomainError("exponent m must be >= 1");
  if (d < 1) throw DomainError("modulus must be >= 1");
  if (d == 1) return Natural(0);
  const Factorization f = factorize(d);
  std::vector<std::pair<Natural, Natural>> residues;
  residues.reserve(f.factors.size());
  Natural pt, r;
  for (const PrimePower& pp : f.factors) {
    mpz_pow_ui(pt.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    // S_m(d) = (d / p^t) * S_m(p^t) (mod p^t), Lemma 3 i with the closed form
    r = (d / pt) * power_sum_prime_power_mod(m, pp.prime, pp.exponent);
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), pt.get_mpz_t());
    residues.emplace_back(r, pt);
  }
  return crt_combine(residues);
}

Natural power_sum_self_mod(const Natural& m) {
  return power_sum_mod_closed(m, m);
}

Natural power_sum_fast_mod(const PowerSumQuery& q) {
  validate(q);
  if (!mpz_divisible_p(q.k.get_mpz_t(), q.modulus.get_mpz_t())) {
    throw DomainError("fast path requires modulus | k");
  }
  Natural r = (q.k / q.modulus) * power_sum_mod_closed(q.m, q.modulus);
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q.modulus.get_mpz_t());
  return r;
}

}  // namespace psum
