#include "doctest.h"

#include <cstdint>

#include "psum/arith.hpp"
#include "psum/congruence.hpp"

using namespace psum;

TEST_CASE("pseudoperfect predicates: the known members") {
  const char* members[] = {"2",     "6",          "42",          "1806",
                           "47058", "2214502422", "52495396602",
                           "8490421583559688410706771261086"};
  for (const char* s : members) {
    CAPTURE(s);
    CHECK(is_primary_pseudoperfect(Natural(s)));
    CHECK(is_weak_primary_pseudoperfect(Natural(s)));
  }
  // the strict identity is only defined from 2 up; weak admits 1 vacuously
  CHECK_THROWS_AS(is_primary_pseudoperfect(Natural(1)), DomainError);
  CHECK(is_weak_primary_pseudoperfect(Natural(1)));
  for (std::uint64_t n : {3, 4, 5, 12, 30, 1805, 1807, 47057, 47059}) {
    CAPTURE(n);
    CHECK_FALSE(is_primary_pseudoperfect(Natural(n)));
    CHECK_FALSE(is_weak_primary_pseudoperfect(Natural(n)));
  }
}

TEST_CASE("pseudoperfect_check: witness sum is exact") {
  const PseudoperfectReport r42 = pseudoperfect_check(Natural(42));
  CHECK(r42.is_primary);
  CHECK(r42.is_weak);
  CHECK(r42.witness_sum == 42);  // 1 + 21 + 14 + 6
  const PseudoperfectReport r12 = pseudoperfect_check(Natural(12));
  CHECK_FALSE(r12.is_primary);
  CHECK(r12.witness_sum == 11);  // 1 + 6 + 4
  const PseudoperfectReport r1 = pseudoperfect_check(Natural(1));
  CHECK(r1.is_weak);
  CHECK(r1.witness_sum == 1);
}

TEST_CASE("search_pseudoperfect: primary and weak variants") {
  CHECK(search_pseudoperfect(100000, false) ==
        std::vector<std::uint64_t>{2, 6, 42, 1806, 47058});
  // the search range starts at 2, so weak mode adds nothing below 10^5
  CHECK(search_pseudoperfect(100000, true) ==
        std::vector<std::uint64_t>{2, 6, 42, 1806, 47058});
  CHECK(search_pseudoperfect(1, false).empty());
  CHECK(search_pseudoperfect(1, true).empty());
}

TEST_CASE("closure fixpoints") {
  CHECK(closed_prime_fixpoint(100) == std::vector<std::uint64_t>{2, 3, 7, 43});
  CHECK(closed_prime_fixpoint(1000000) ==
        std::vector<std::uint64_t>{2, 3, 7, 43});
  CHECK(closed_squarefree_fixpoint(10000) ==
        std::vector<std::uint64_t>{1, 2, 6, 42, 1806});
  CHECK(closed_squarefree_fixpoint(50) ==
        std::vector<std::uint64_t>{1, 2, 6, 42});
}

TEST_CASE("special set membership is the m in S_m(m) = 1 (mod m) sense") {
  CHECK(special_set_S(2000) == std::vector<std::uint64_t>{1, 2, 6, 42, 1806});
  CHECK(special_set_S(41) == std::vector<std::uint64_t>{1, 2, 6});
}
