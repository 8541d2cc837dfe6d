#include "doctest.h"

#include <cstdint>

#include "psum/arith.hpp"
#include "psum/config.hpp"
#include "psum/powersum.hpp"

using namespace psum;

TEST_CASE("naive power sums: hand values") {
  // S_2(4) = 1 + 4 + 9 + 16 = 30
  CHECK(power_sum_naive_mod({Natural(2), Natural(4), Natural(100)}) == 30);
  // S_1(4) = 10
  CHECK(power_sum_naive_mod({Natural(1), Natural(4), Natural(4)}) == 2);
  // S_6(6) = 67171 = 1 + 64 + 729 + 4096 + 15625 + 46656
  CHECK(power_sum_naive_mod({Natural(6), Natural(6), Natural(100000)}) == 67171);
  CHECK(power_sum_naive_mod({Natural(6), Natural(6), Natural(6)}) == 1);
  // modulus 1 collapses everything
  CHECK(power_sum_naive_mod({Natural(5), Natural(9), Natural(1)}) == 0);
}

TEST_CASE("naive power sums: validation and budget") {
  CHECK_THROWS_AS(power_sum_naive_mod({Natural(0), Natural(4), Natural(5)}),
                  DomainError);
  CHECK_THROWS_AS(power_sum_naive_mod({Natural(2), Natural(0), Natural(5)}),
                  DomainError);
  CHECK_THROWS_AS(power_sum_naive_mod({Natural(2), Natural(4), Natural(0)}),
                  DomainError);
  const std::uint64_t saved = config().oracle_k_budget;
  config().oracle_k_budget = 10;
  CHECK_THROWS_AS(power_sum_naive_mod({Natural(2), Natural(11), Natural(5)}),
                  BudgetExceeded);
  config().oracle_k_budget = saved;
}

TEST_CASE("prime-power closed form: deviation branch is explicit") {
  // S_1(2^t) = 2^{t-1}(2^t + 1): mod 2^t that is 2^{t-1}, not -1
  CHECK(lemma3_deviation_branch(Natural(1), Natural(2), 2));
  CHECK_FALSE(lemma3_deviation_branch(Natural(1), Natural(2), 1));
  CHECK_FALSE(lemma3_deviation_branch(Natural(2), Natural(2), 2));
  CHECK_FALSE(lemma3_deviation_branch(Natural(1), Natural(3), 2));
  CHECK(power_sum_prime_power_mod(Natural(1), Natural(2), 2) == 2);
  CHECK(power_sum_naive_mod({Natural(1), Natural(4), Natural(4)}) == 2);
}

TEST_CASE("prime-power closed form: spot values") {
  // odd p, (p-1) | m: congruent to -p^{t-1}
  CHECK(power_sum_prime_power_mod(Natural(4), Natural(5), 2) == 20);
  CHECK(power_sum_prime_power_mod(Natural(3), Natural(5), 2) == 0);
  CHECK(power_sum_prime_power_mod(Natural(2), Natural(3), 1) == 2);
  CHECK(power_sum_prime_power_mod(Natural(7), Natural(2), 1) == 1);
  CHECK(power_sum_prime_power_mod(Natural(7), Natural(2), 3) == 0);
  CHECK(power_sum_prime_power_mod(Natural(8), Natural(2), 3) == 4);
  CHECK_THROWS_AS(power_sum_prime_power_mod(Natural(2), Natural(6), 1),
                  DomainError);
  CHECK_THROWS_AS(power_sum_prime_power_mod(Natural(2), Natural(3), 0),
                  DomainError);
}

TEST_CASE("closed composite modulus agrees with naive") {
  for (std::uint64_t d = 1; d <= 200; ++d) {
    for (std::uint64_t m = 1; m <= 30; ++m) {
      CHECK(power_sum_mod_closed(Natural(m), Natural(d)) ==
            power_sum_naive_mod({Natural(m), Natural(d), Natural(d)}));
    }
  }
}

TEST_CASE("self sum: known fixpoint witnesses") {
  CHECK(power_sum_self_mod(Natural(1)) == 0);
  CHECK(power_sum_self_mod(Natural(2)) == 1);
  CHECK(power_sum_self_mod(Natural(6)) == 1);
  CHECK(power_sum_self_mod(Natural(42)) == 1);
  CHECK(power_sum_self_mod(Natural(1806)) == 1);
  // m = 47058: residues 1 mod 2, 1 mod 3, 0 mod 11, 1 mod 23, 0 mod 31
  CHECK(power_sum_self_mod(Natural(47058)) == 5797);
  CHECK(power_sum_self_mod(Natural(47058)) ==
        power_sum_naive_mod({Natural(47058), Natural(47058), Natural(47058)}));
  // q = 47058, n = 5 solves the congruence: S_{qn}(qn) = n (mod qn)
  const Natural qn = Natural(47058) * 5;
  CHECK(power_sum_self_mod(qn) == 5);
}

TEST_CASE("self sum: scales to huge arguments") {
  const Natural q9("8490421583559688410706771261086");
  const Natural n9("39607528021345872635");
  // minimal solution for the 31-digit modulus: S_{qn}(qn) = n (mod qn)
  CHECK(power_sum_self_mod(q9 * n9) == n9);
  // residues of S_q(q) mod q at primes where p-1 does not divide q
  const Natural r = power_sum_self_mod(q9);
  CHECK(r % 11 == 0);
  CHECK(r % 31 == 0);
  CHECK(r % 2 == 1);
}

TEST_CASE("fast path requires divisibility") {
  CHECK(power_sum_fast_mod({Natural(42), Natural(42), Natural(42)}) == 1);
  CHECK(power_sum_fast_mod({Natural(6), Natural(12), Natural(6)}) ==
        power_sum_naive_mod({Natural(6), Natural(12), Natural(6)}));
  CHECK_THROWS_AS(power_sum_fast_mod({Natural(2), Natural(5), Natural(3)}),
                  DomainError);
}
