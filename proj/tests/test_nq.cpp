#include "doctest.h"

#include <cstdint>

#include "psum/arith.hpp"
#include "psum/congruence.hpp"
#include "psum/nq.hpp"

using namespace psum;

namespace {
const char* kQ9 = "8490421583559688410706771261086";
}

TEST_CASE("compute_nQ: the full table") {
  CHECK(compute_nQ(Natural(1)) == 1);
  CHECK(compute_nQ(Natural(2)) == 1);
  CHECK(compute_nQ(Natural(6)) == 1);
  CHECK(compute_nQ(Natural(42)) == 1);
  CHECK(compute_nQ(Natural(1806)) == 1);
  CHECK(compute_nQ(Natural(47058)) == 5);
  CHECK(compute_nQ(Natural("2214502422")) == 5);
  CHECK(compute_nQ(Natural("52495396602")) == 51800);
  CHECK(compute_nQ(Natural(kQ9)) == Natural("39607528021345872635"));
  CHECK_THROWS_AS(compute_nQ(Natural(4)), DomainError);
  CHECK_THROWS_AS(compute_nQ(Natural(30)), DomainError);
}

TEST_CASE("emptiness: only the seventh value dies") {
  const EmptinessResult dead = is_NQ_empty(Natural("52495396602"));
  CHECK(dead.empty);
  REQUIRE(dead.witness.has_value());
  CHECK(*dead.witness == 5);
  for (const char* s :
       {"1", "2", "6", "42", "1806", "47058", "2214502422", kQ9}) {
    CAPTURE(s);
    const EmptinessResult alive = is_NQ_empty(Natural(s));
    CHECK_FALSE(alive.empty);
    CHECK_FALSE(alive.witness.has_value());
  }
}

TEST_CASE("nq_profile: minimal elements") {
  CHECK(nq_profile(Natural(1)).min_element.value() == 1);
  CHECK(nq_profile(Natural(2)).min_element.value() == 1);
  CHECK(nq_profile(Natural(47058)).min_element.value() == 5);
  CHECK_FALSE(nq_profile(Natural("52495396602")).min_element.has_value());
  const NQProfile p9 = nq_profile(Natural(kQ9));
  CHECK_FALSE(p9.empty);
  CHECK(p9.min_element.value() == p9.nQ);
}

TEST_CASE("membership_fast: structural verdicts") {
  // q = 2, n = 3: 3 is forbidden because 2 | 2*3
  const MembershipVerdict v = membership_fast(Natural(2), Natural(3));
  CHECK_FALSE(v.member);
  CHECK(v.failing_condition == FailCondition::ii_forbidden_prime);
  CHECK(v.witness.value() == 3);
  // q = 4 is not weak: 4/2 + 1 = 3 = 1 (mod 2)
  const MembershipVerdict w = membership_fast(Natural(4), Natural(1));
  CHECK_FALSE(w.member);
  CHECK(w.failing_condition == FailCondition::i_local_congruence);
  CHECK(w.witness.value() == 2);
  // q = 47058, n = 1: nQ = 5 does not divide 1
  const MembershipVerdict x = membership_fast(Natural(47058), Natural(1));
  CHECK_FALSE(x.member);
  CHECK(x.failing_condition == FailCondition::i_divisibility);
  // and n = 5 is the minimal member
  CHECK(membership_fast(Natural(47058), Natural(5)).member);
  CHECK(membership_fast(Natural(1), Natural(1)).member);
  CHECK(membership_fast(Natural(2), Natural(1)).member);
}

TEST_CASE("membership_fast agrees with the definition on a grid") {
  for (std::uint64_t q = 1; q <= 12; ++q) {
    for (std::uint64_t n = 1; q * n <= 600; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      CHECK(membership_fast(Natural(q), Natural(n)).member ==
            membership_oracle(Natural(q), Natural(n)));
    }
  }
}

TEST_CASE("enumerate_NQ: prefixes") {
  CHECK(enumerate_NQ(Natural(1), 9) ==
        std::vector<std::uint64_t>{1, 3, 5, 7, 9});
  CHECK(enumerate_NQ(Natural(2), 28) ==
        std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8, 11, 13, 14, 16, 17, 19,
                                   22, 23, 25, 26, 28});
  CHECK(enumerate_NQ(Natural("52495396602"), 1000000).empty());
  CHECK(enumerate_NQ(Natural(4), 100).empty());
  // odd multiples of 5 avoiding forbidden primes (7 is always forbidden)
  const auto n47058 = enumerate_NQ(Natural(47058), 100);
  CHECK(n47058 ==
        std::vector<std::uint64_t>{5, 15, 25, 45, 55, 65, 75, 85, 95});
  // every enumerated element passes the oracle where affordable
  for (std::uint64_t n : enumerate_NQ(Natural(6), 60)) {
    CAPTURE(n);
    CHECK(membership_oracle(Natural(6), Natural(n)));
  }
}

TEST_CASE("enumerate matches fast membership on a window") {
  for (const std::uint64_t q : {1, 2, 6, 42}) {
    const auto listed = enumerate_NQ(Natural(q), 500);
    std::vector<std::uint64_t> direct;
    for (std::uint64_t n = 1; n <= 500; ++n) {
      if (membership_fast(Natural(q), Natural(n)).member) direct.push_back(n);
    }
    CAPTURE(q);
    CHECK(listed == direct);
  }
}
