#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psum {

// Arbitrary-precision non-negative integer. Signedness is enforced at the
// operation level (mpz_class is signed; contracts reject negatives).
using Natural = mpz_class;
// Exact rational, always canonicalized.
using Ratio = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Precondition/domain violations (CLI exit code 1).
struct DomainError : Error {
  using Error::Error;
};
// A configurable budget was exceeded (CLI exit code 1).
struct BudgetExceeded : Error {
  using Error::Error;
};
// Factorization gave up within its effort budget (never silently wrong).
struct IncompleteFactorization : Error {
  using Error::Error;
};

enum class Certainty { proven, probable };

struct PrimalityResult {
  bool prime = false;
  Certainty certainty = Certainty::proven;
};

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;
};

struct Factorization {
  std::vector<PrimePower> factors;  // strictly ascending primes
  Certainty certainty = Certainty::proven;

  Natural value() const;
  Natural tau() const;  // divisor count
  bool square_free() const;
  std::vector<Natural> primes() const;
};

// Deterministic Miller-Rabin (first 12 prime bases) below 2^64, BPSW-style
// (base-2 strong probable prime + strong Lucas) above.
PrimalityResult is_prime(const Natural& n);

// Trial division to config().trial_division_limit, then Brent-variant Pollard
// rho under config().rho_iteration_cap. Deterministic; throws
// IncompleteFactorization when the budget runs out.
Factorization factorize(const Natural& n);

// All positive divisors, ascending.
std::vector<Natural> divisors_of(const Factorization& f);

// x < prod(mod_i) with x = r_i (mod mod_i); moduli must be pairwise coprime.
Natural crt_combine(const std::vector<std::pair<Natural, Natural>>& residues);

// spf[i] = smallest prime factor of i (spf[0] = 0, spf[1] = 1).
std::vector<std::uint32_t> smallest_prime_factor_sieve(std::uint64_t limit);

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// First count primes (2, 3, 5, ...).
std::vector<std::uint64_t> first_primes(std::uint64_t count);

// Distinct prime factors of n obtained by walking an SPF table (n <= table size).
std::vector<std::uint64_t> spf_distinct_primes(std::uint64_t n,
                                               const std::vector<std::uint32_t>& spf);

bool fits_u64(const Natural& n);
std::uint64_t to_u64(const Natural& n);

}  // namespace psum
