#include "psum/density.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>

#include "psum/config.hpp"
#include "psum/nq.hpp"

namespace psum {

namespace {

// common denominator for directed-rounded prime-sum accumulation; the
// per-term rounding error is bounded by (term count)/kScale, far below any
// tolerance in play, and always rounded toward validity of the bound
const Natural& scale_denom() {
  static const Natural s = [] {
    Natural t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, 40);
    return t;
  }();
  return s;
}

Natural nat_gcd(const Natural& a, const Natural& b) {
  Natural g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

std::string to_string(TailMethod m) {
  return m == TailMethod::pruned ? "pruned" : "plain";
}

std::vector<Natural> ProgressionFamily::moduli() const {
  std::vector<Natural> out;
  out.reserve(entries.size());
  for (const ProgressionEntry& e : entries) out.push_back(e.modulus);
  return out;
}

ProgressionFamily complement_moduli(const Natural& q, std::uint64_t prime_count) {
  if (prime_count < 1) throw DomainError("prime_count must be >= 1");
  const NQProfile profile = nq_profile(q);
  if (profile.empty) throw DomainError("N_q is empty");

  ProgressionFamily family;
  family.q = q;
  family.nQ = profile.nQ;
  family.prime_count = prime_count;
  const std::vector<Natural> divs = divisors_of(factorize(q));
  Natural pm1, pp, D, M;
  for (const std::uint64_t p : first_primes(prime_count)) {
    if (mpz_divisible_ui_p(q.get_mpz_t(), p)) continue;
    pm1 = p - 1;
    for (const Natural& d : divs) {
      if (!mpz_divisible_p(pm1.get_mpz_t(), d.get_mpz_t())) continue;
      pp = p * (pm1 / d);
      D = nat_gcd(profile.nQ, pp);
      M = (profile.nQ / D) * pp;
      ProgressionEntry entry;
      entry.modulus = M;
      entry.d = d;
      entry.p = p;
      entry.tag = profile.nQ == 1 ? "Wd" : (D == profile.nQ ? "W2" : "W1");
      family.entries.push_back(std::move(entry));
    }
  }
  return primitive_reduce(family);
}

ProgressionFamily primitive_reduce(const ProgressionFamily& family) {
  ProgressionFamily out;
  out.q = family.q;
  out.nQ = family.nQ;
  out.prime_count = family.prime_count;
  std::vector<ProgressionEntry> sorted = family.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ProgressionEntry& a, const ProgressionEntry& b) {
              if (a.modulus != b.modulus) return a.modulus < b.modulus;
              if (a.p != b.p) return a.p < b.p;
              return a.d < b.d;
            });
  for (ProgressionEntry& e : sorted) {
    bool covered = false;
    for (const ProgressionEntry& kept : out.entries) {
      if (mpz_divisible_p(e.modulus.get_mpz_t(), kept.modulus.get_mpz_t())) {
        covered = true;
        break;
      }
    }
    if (!covered) out.entries.push_back(std::move(e));
  }
  return out;
}

std::vector<Natural> primitive_reduce(std::vector<Natural> moduli) {
  std::sort(moduli.begin(), moduli.end());
  std::vector<Natural> kept;
  for (Natural& m : moduli) {
    bool covered = false;
    for (const Natural& k : kept) {
      if (mpz_divisible_p(m.get_mpz_t(), k.get_mpz_t())) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(std::move(m));
  }
  return kept;
}

namespace {

// depth-first inclusion-exclusion over descending moduli; when a remaining
// modulus divides the running lcm the rest of that subtree telescopes to a
// single +/- 1/lcm term
struct IeEngine {
  std::vector<Natural> mods;
  Natural lall, acc;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;

  void dfs(std::size_t i, const Natural& l, int sign) {
    for (std::size_t j = i; j < mods.size(); ++j) {
      if (mpz_divisible_p(l.get_mpz_t(), mods[j].get_mpz_t())) {
        Natural t;
        mpz_divexact(t.get_mpz_t(), lall.get_mpz_t(), l.get_mpz_t());
        if (sign > 0) {
          acc += t;
        } else {
          acc -= t;
        }
        return;
      }
    }
    Natural l2, t;
    for (std::size_t j = i; j < mods.size(); ++j) {
      if (++nodes > budget) {
        throw BudgetExceeded("inclusion-exclusion node budget exceeded");
      }
      mpz_lcm(l2.get_mpz_t(), l.get_mpz_t(), mods[j].get_mpz_t());
      mpz_divexact(t.get_mpz_t(), lall.get_mpz_t(), l2.get_mpz_t());
      if (sign > 0) {
        acc += t;
      } else {
        acc -= t;
      }
      dfs(j + 1, l2, -sign);
    }
  }
};

}  // namespace

Ratio union_density_exact(const std::vector<Natural>& moduli) {
  if (moduli.empty()) return Ratio(0);
  IeEngine engine;
  engine.mods = moduli;
  for (const Natural& m : engine.mods) {
    if (m < 1) throw DomainError("moduli must be >= 1");
    if (m == 1) return Ratio(1);
  }
  std::sort(engine.mods.begin(), engine.mods.end(),
            [](const Natural& a, const Natural& b) { return a > b; });
  engine.lall = 1;
  for (const Natural& m : engine.mods) {
    mpz_lcm(engine.lall.get_mpz_t(), engine.lall.get_mpz_t(), m.get_mpz_t());
  }
  engine.acc = 0;
  engine.budget = config().ie_node_budget;
  engine.dfs(0, Natural(1), +1);
  Ratio r(engine.acc, engine.lall);
  r.canonicalize();
  return r;
}

Ratio union_density_exact(const ProgressionFamily& family) {
  return union_density_exact(family.moduli());
}

namespace {

struct TailContext {
  Natural nQ{1};
  std::vector<Natural> family_mods;  // primitive finite-part moduli
  bool has_two = false;              // 2 among the family moduli
};

TailContext tail_context(const Natural& q, std::uint64_t prime_count) {
  TailContext ctx;
  try {
    ProgressionFamily family = complement_moduli(q, prime_count);
    ctx.nQ = family.nQ;
    ctx.family_mods = family.moduli();
  } catch (const Error&) {
    // no usable finite family (empty or non-weak q): prune nothing
    try {
      ctx.nQ = compute_nQ(q);
    } catch (const Error&) {
      ctx.nQ = 1;
    }
  }
  for (const Natural& m : ctx.family_mods) {
    if (m == 2) ctx.has_two = true;
  }
  return ctx;
}

}  // namespace

Ratio tail_upper_bound(const Natural& q, std::uint64_t prime_count,
                       std::uint64_t extension_cutoff, TailMethod method) {
  if (q < 1) throw DomainError("q must be >= 1");
  if (prime_count < 1) throw DomainError("prime_count must be >= 1");
  const std::vector<std::uint64_t> head = first_primes(prime_count);
  if (extension_cutoff < head.back()) {
    throw DomainError("extension cutoff below the last finite-part prime");
  }
  if (extension_cutoff > config().sieve_limit) {
    throw BudgetExceeded("extension cutoff exceeds sieve budget");
  }

  const std::vector<std::uint64_t> primes = primes_up_to(extension_cutoff);
  const std::vector<Natural> divs = divisors_of(factorize(q));
  Natural up_num = 0, t;  // directed numerator over scale_denom()
  Ratio remainder(0);

  if (method == TailMethod::plain) {
    std::vector<Natural> scaled;  // d * 10^40 per divisor
    scaled.reserve(divs.size());
    for (const Natural& d : divs) scaled.push_back(d * scale_denom());
    for (std::size_t i = prime_count; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (mpz_divisible_ui_p(q.get_mpz_t(), p)) continue;
      const std::uint64_t pm1 = p - 1;
      for (std::size_t k = 0; k < divs.size(); ++k) {
        if (!fits_u64(divs[k])) break;  // ascending; too large to divide p-1
        const std::uint64_t d = to_u64(divs[k]);
        if (d > pm1 || pm1 % d != 0) continue;
        mpz_cdiv_q_ui(t.get_mpz_t(), scaled[k].get_mpz_t(), p * pm1);
        up_num += t;
      }
    }
    Natural sigma = 0;
    for (const Natural& d : divs) sigma += d;
    remainder = Ratio(sigma, Natural(extension_cutoff));
    remainder.canonicalize();
  } else {
    const TailContext ctx = tail_context(q, prime_count);
    Natural g, pp, M;
    for (std::size_t i = prime_count; i < primes.size(); ++i) {
      const std::uint64_t p = primes[i];
      if (mpz_divisible_ui_p(q.get_mpz_t(), p)) continue;
      const std::uint64_t pm1 = p - 1;
      mpz_gcd_ui(g.get_mpz_t(), q.get_mpz_t(), pm1);
      const std::uint64_t dmax = to_u64(g);
      const std::uint64_t ppu = p * (pm1 / dmax);
      pp = ppu;
      mpz_gcd_ui(g.get_mpz_t(), ctx.nQ.get_mpz_t(), ppu);
      M = (ctx.nQ / g) * pp;
      bool covered = false;
      for (const Natural& s : ctx.family_mods) {
        if (mpz_divisible_p(M.get_mpz_t(), s.get_mpz_t())) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      mpz_cdiv_q(t.get_mpz_t(), scale_denom().get_mpz_t(), M.get_mpz_t());
      up_num += t;
    }
    // close each divisor class at its first uncovered prime index: families
    // with p > cutoff, p = 1 (mod d) have p - 1 >= d*T, and sum_{j>=T} 1/j^2
    // < 1/(T-1); classes entirely inside 2N are dropped when 2 is already a
    // family modulus
    Ratio piece;
    for (const Natural& d : divs) {
      if (ctx.has_two && mpz_odd_p(d.get_mpz_t())) continue;
      const Natural T = Natural(extension_cutoff - 1) / d + 1;
      if (T >= 2) {
        piece = Ratio(Natural(1), d * (T - 1));
      } else {
        piece = Ratio(Natural(329), Natural(200) * d);
      }
      piece.canonicalize();
      remainder += piece;
    }
  }

  Ratio result(up_num, scale_denom());
  result.canonicalize();
  result += remainder;
  return result;
}

DensityBounds density_bounds(const Natural& q, std::uint64_t prime_count,
                             std::uint64_t extension_cutoff, TailMethod method) {
  static const Natural kQ9("8490421583559688410706771261086");
  if (q == kQ9) {
    throw DomainError(
        "density bounds for the 31-digit weak value are out of scope; "
        "use the theoretical lower bound and the trivial 1/nQ upper bound");
  }
  const NQProfile profile = nq_profile(q);
  if (profile.empty) throw DomainError("N_q is empty");

  DensityBounds bounds;
  bounds.q = q;
  bounds.nQ = profile.nQ;
  bounds.prime_cutoff_index = prime_count;
  bounds.tail_cutoff = extension_cutoff;
  bounds.tail_method = to_string(method);
  bounds.union_exact = union_density_exact(complement_moduli(q, prime_count));
  bounds.tail_value = tail_upper_bound(q, prime_count, extension_cutoff, method);
  Ratio inv_n(Natural(1), profile.nQ);
  inv_n.canonicalize();
  bounds.upper = inv_n - bounds.union_exact;
  bounds.lower = bounds.upper - bounds.tail_value;
  if (bounds.lower < 0) bounds.lower = 0;
  return bounds;
}

Ratio empirical_density(const Natural& q, std::uint64_t limit) {
  if (limit < 1) throw DomainError("limit must be >= 1");
  const std::size_t count = enumerate_NQ(q, limit).size();
  Ratio r{Natural(count), Natural(limit)};
  r.canonicalize();
  return r;
}

Ratio theoretical_lower_bound(const Natural& q, const Natural& y) {
  const NQProfile profile = nq_profile(q);
  if (profile.empty) throw DomainError("N_q is empty");
  const Natural qn = q * profile.nQ;
  if (y < 286 || y < qn) {
    throw DomainError("y must be at least max(286, q*nQ)");
  }

  // tau(q*nQ) from the merged factorizations (q and nQ need not be coprime)
  std::map<Natural, unsigned> exps;
  for (const PrimePower& pp : factorize(q).factors) exps[pp.prime] += pp.exponent;
  for (const PrimePower& pp : factorize(profile.nQ).factors) {
    exps[pp.prime] += pp.exponent;
  }
  Natural tau = 1;
  for (const auto& [p, e] : exps) tau *= e + 1;

  // log y rounded up at 128-bit precision keeps 0.5/log_up a valid lower part
  mpfr_t fy, ly;
  mpfr_init2(fy, 128);
  mpfr_init2(ly, 128);
  mpfr_set_z(fy, y.get_mpz_t(), MPFR_RNDU);
  mpfr_log(ly, fy, MPFR_RNDU);
  Natural mant;
  const mpfr_exp_t e2 = mpfr_get_z_2exp(mant.get_mpz_t(), ly);
  mpfr_clear(fy);
  mpfr_clear(ly);
  Ratio log_up;
  if (e2 >= 0) {
    Natural shifted = mant;
    mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(e2));
    log_up = Ratio(shifted);
  } else {
    Natural den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e2));
    log_up = Ratio(mant, den);
    log_up.canonicalize();
  }

  Ratio tau_term(2 * tau, y);
  tau_term.canonicalize();
  Ratio main = Ratio(Natural(1), Natural(2)) / log_up - tau_term;
  Ratio result = main / Ratio(qn);
  result.canonicalize();
  return result;
}

bool ConstantCheck::contains(const Ratio& c) const {
  return partial_lo <= c && c <= partial_hi + remainder_hi;
}

ConstantCheck prime_reciprocal_sum_interval(std::uint64_t cutoff) {
  if (cutoff < 2) throw DomainError("cutoff must be >= 2");
  if (cutoff > config().sieve_limit) {
    throw BudgetExceeded("cutoff exceeds sieve budget");
  }
  Natural lo_num = 0, hi_num = 0, t;
  for (const std::uint64_t p : primes_up_to(cutoff)) {
    const std::uint64_t den = p * (p - 1);
    mpz_fdiv_q_ui(t.get_mpz_t(), scale_denom().get_mpz_t(), den);
    lo_num += t;
    mpz_cdiv_q_ui(t.get_mpz_t(), scale_denom().get_mpz_t(), den);
    hi_num += t;
  }
  ConstantCheck check;
  check.partial_lo = Ratio(lo_num, scale_denom());
  check.partial_lo.canonicalize();
  check.partial_hi = Ratio(hi_num, scale_denom());
  check.partial_hi.canonicalize();
  check.remainder_hi = Ratio(Natural(1), Natural(cutoff));
  check.remainder_hi.canonicalize();
  return check;
}

namespace {

std::string render_decimal(const Ratio& value, int digits, bool round_up) {
  if (digits < 1) throw DomainError("digits must be >= 1");
  Natural pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Natural scaled = value.get_num() * pow10;
  Natural qd;
  if (round_up) {
    mpz_cdiv_q(qd.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  } else {
    mpz_fdiv_q(qd.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  }
  std::string sign;
  if (qd < 0) {
    sign = "-";
    qd = -qd;
  }
  const Natural ip = qd / pow10;
  const Natural fp = qd % pow10;
  std::string frac = fp.get_str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  return sign + ip.get_str() + "." + frac;
}

}  // namespace

std::string decimal_lower(const Ratio& value, int digits) {
  return render_decimal(value, digits, false);
}

std::string decimal_upper(const Ratio& value, int digits) {
  return render_decimal(value, digits, true);
}

}  // namespace psum
