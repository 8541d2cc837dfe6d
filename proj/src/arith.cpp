#include "psum/arith.hpp"

#include <algorithm>
#include <array>

#include "psum/config.hpp"

namespace psum {

static_assert(sizeof(unsigned long) == 8, "LP64 platform expected");

Natural Factorization::value() const {
  Natural v = 1;
  for (const PrimePower& pp : factors) {
    for (unsigned e = 0; e < pp.exponent; ++e) v *= pp.prime;
  }
  return v;
}

Natural Factorization::tau() const {
  Natural t = 1;
  for (const PrimePower& pp : factors) t *= pp.exponent + 1;
  return t;
}

bool Factorization::square_free() const {
  for (const PrimePower& pp : factors) {
    if (pp.exponent != 1) return false;
  }
  return true;
}

std::vector<Natural> Factorization::primes() const {
  std::vector<Natural> out;
  out.reserve(factors.size());
  for (const PrimePower& pp : factors) out.push_back(pp.prime);
  return out;
}

bool fits_u64(const Natural& n) {
  return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits");
  return mpz_get_ui(n.get_mpz_t());
}

namespace {

constexpr std::array<unsigned long, 12> kMrBases = {2,  3,  5,  7,  11, 13,
                                                    17, 19, 23, 29, 31, 37};

// true when a witnesses compositeness of odd n = d*2^s + 1
bool mr_witness(const Natural& n, const Natural& a, const Natural& d,
                mp_bitcnt_t s) {
  Natural x, nm1 = n - 1;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return false;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
    if (x == nm1) return false;
  }
  return true;
}

// strong Lucas probable prime test, Selfridge parameters (P=1, Q=(1-D)/4);
// n odd, > 37, not a perfect square
bool strong_lucas_prp(const Natural& n) {
  long mag = 5;
  int sign = 1;
  Natural D;
  while (true) {
    D = sign > 0 ? Natural(mag) : Natural(-mag);
    const int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) return n == mag;  // shared factor |D|
    mag += 2;
    sign = -sign;
  }
  const Natural Q = (1 - D) / 4;
  Natural d = n + 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  const auto reduce = [&n](Natural& x) {
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  };
  const auto halve = [&](Natural& x) {
    reduce(x);
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    x >>= 1;
  };

  Natural U = 1, V = 1, qk = Q, t;  // U_1, V_1, Q^1
  reduce(qk);
  const mp_bitcnt_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (mp_bitcnt_t i = bits - 1; i-- > 0;) {
    U = U * V;  // index doubling
    reduce(U);
    V = V * V - 2 * qk;
    reduce(V);
    qk = qk * qk;
    reduce(qk);
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      t = U + V;  // increment, P = 1
      halve(t);
      V = D * U + V;
      halve(V);
      U = t;
      qk *= Q;
      reduce(qk);
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = V * V - 2 * qk;
    reduce(V);
    if (V == 0) return true;
    qk = qk * qk;
    reduce(qk);
  }
  return false;
}

}  // namespace

PrimalityResult is_prime(const Natural& n) {
  if (n < 2) return {false, Certainty::proven};
  for (unsigned long b : kMrBases) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) {
      return {n == b, Certainty::proven};
    }
  }
  Natural d = n - 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  if (fits_u64(n)) {
    // deterministic for n < 3.3*10^24, in particular all of u64
    for (unsigned long b : kMrBases) {
      if (mr_witness(n, Natural(b), d, s)) return {false, Certainty::proven};
    }
    return {true, Certainty::proven};
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) return {false, Certainty::proven};
  if (mr_witness(n, Natural(2ul), d, s)) return {false, Certainty::proven};
  return {strong_lucas_prp(n), Certainty::probable};
}

namespace {

Natural brent_rho_factor(const Natural& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Natural x, y, ys, q, g, diff;
  for (unsigned long c = 1;; ++c) {
    y = 2;
    q = 1;
    g = 1;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) {
        y = y * y + c;
        mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
      }
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        const unsigned long span = std::min(m, r - k);
        for (unsigned long i = 0; i < span; ++i) {
          if (budget-- == 0) {
            throw IncompleteFactorization("factorization budget exhausted");
          }
          y = y * y + c;
          mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
          diff = x - y;
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (g == n) {
      // backtrack one step at a time from the last saved point
      do {
        if (budget-- == 0) {
          throw IncompleteFactorization("factorization budget exhausted");
        }
        ys = ys * ys + c;
        mpz_mod(ys.get_mpz_t(), ys.get_mpz_t(), n.get_mpz_t());
        diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    // cycle collapsed; retry with the next polynomial offset
  }
}

void split_composite(const Natural& n, std::uint64_t& budget,
                     std::vector<std::pair<Natural, Certainty>>& out) {
  const PrimalityResult pr = is_prime(n);
  if (pr.prime) {
    out.emplace_back(n, pr.certainty);
    return;
  }
  const Natural g = brent_rho_factor(n, budget);
  split_composite(g, budget, out);
  split_composite(n / g, budget, out);
}

}  // namespace

Factorization factorize(const Natural& n) {
  if (n < 1) throw DomainError("factorize requires n >= 1");
  Factorization f;
  if (n == 1) return f;

  const std::uint64_t limit = config().trial_division_limit;
  Natural rem = n;
  std::uint64_t d = 2;
  const auto next_d = [](std::uint64_t v) -> std::uint64_t {
    if (v == 2) return 3;
    if (v == 3) return 5;
    return v + (v % 6 == 1 ? 4 : 2);  // 6k +/- 1 wheel
  };

  // arbitrary-precision trial phase, until the remainder fits in a word
  while (!fits_u64(rem) && d <= limit && d <= 4'000'000'000ull) {
    if (mpz_tdiv_ui(rem.get_mpz_t(), d) == 0) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), d);
        ++e;
      } while (mpz_tdiv_ui(rem.get_mpz_t(), d) == 0);
      f.factors.push_back({Natural(d), e});
    }
    d = next_d(d);
  }

  std::uint64_t r = fits_u64(rem) ? to_u64(rem) : 0;
  if (r != 0) {
    while (d <= limit && (unsigned __int128)d * d <= r) {
      if (r % d == 0) {
        unsigned e = 0;
        do {
          r /= d;
          ++e;
        } while (r % d == 0);
        f.factors.push_back({Natural(d), e});
      }
      d = next_d(d);
    }
    if (r > 1 && (unsigned __int128)d * d > r) {
      f.factors.push_back({Natural(r), 1});  // below the square of the cursor
      r = 1;
    }
    rem = r;
  }

  if (rem > 1) {
    std::uint64_t budget = config().rho_iteration_cap;
    std::vector<std::pair<Natural, Certainty>> found;
    split_composite(rem, budget, found);
    for (auto& [p, cert] : found) {
      if (cert == Certainty::probable) f.certainty = Certainty::probable;
      auto it = std::find_if(f.factors.begin(), f.factors.end(),
                             [&](const PrimePower& pp) { return pp.prime == p; });
      if (it != f.factors.end()) {
        ++it->exponent;
      } else {
        f.factors.push_back({p, 1});
      }
    }
  }

  std::sort(f.factors.begin(), f.factors.end(),
            [](const PrimePower& a, const PrimePower& b) {
              return a.prime < b.prime;
            });
  return f;
}

std::vector<Natural> divisors_of(const Factorization& f) {
  std::vector<Natural> divs{Natural(1)};
  for (const PrimePower& pp : f.factors) {
    const std::size_t base = divs.size();
    Natural pe = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pe *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Natural crt_combine(const std::vector<std::pair<Natural, Natural>>& residues) {
  Natural x = 0, m = 1, inv, t;
  for (const auto& [r, mod] : residues) {
    if (mod < 1) throw DomainError("crt modulus must be positive");
    if (mod == 1) continue;
    if (mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t()) == 0) {
      throw DomainError("crt moduli must be pairwise coprime");
    }
    t = (r - x) * inv;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
    x += m * t;
    m *= mod;
  }
  return x;
}

std::vector<std::uint32_t> smallest_prime_factor_sieve(std::uint64_t limit) {
  if (limit > 0xFFFFFFFFull) throw DomainError("sieve limit exceeds 32-bit range");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  if (limit >= 1) spf[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    if (i * i <= limit) {
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::uint64_t count) {
  std::uint64_t bound = 16;
  while (true) {
    std::vector<std::uint64_t> ps = primes_up_to(bound);
    if (ps.size() >= count) {
      ps.resize(count);
      return ps;
    }
    bound *= 2;
  }
}

std::vector<std::uint64_t> spf_distinct_primes(
    std::uint64_t n, const std::vector<std::uint32_t>& spf) {
  if (n >= spf.size()) throw DomainError("value outside sieve range");
  std::vector<std::uint64_t> out;
  while (n > 1) {
    const std::uint64_t p = spf[n];
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  return out;
}

}  // namespace psum
