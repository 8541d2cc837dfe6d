#include "doctest.h"

#include <cstdint>
#include <vector>

#include "psum/arith.hpp"
#include "psum/config.hpp"
#include "psum/density.hpp"
#include "psum/nq.hpp"

using namespace psum;

namespace {

// brute-force density of { n <= L : some modulus divides n } with L = lcm
Ratio union_by_counting(const std::vector<Natural>& mods) {
  Natural l(1);
  for (const Natural& m : mods) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.get_mpz_t());
  const std::uint64_t limit = to_u64(l);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    for (const Natural& m : mods) {
      if (n % to_u64(m) == 0) {
        ++hits;
        break;
      }
    }
  }
  Ratio r(Natural(hits), l);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("complement_moduli: collapse for q = 1") {
  const ProgressionFamily fam = complement_moduli(Natural(1), 6);
  REQUIRE(fam.entries.size() == 1);
  CHECK(fam.entries[0].modulus == 2);
  CHECK(fam.entries[0].p == 2);
  CHECK(fam.nQ == 1);
  CHECK(union_density_exact(fam) == Ratio(1, 2));
}

TEST_CASE("complement_moduli: q = 2 small family") {
  // first six primes overall, skipping 2 | q: progressions from 3,5,7,11,13
  const ProgressionFamily fam = complement_moduli(Natural(2), 6);
  CHECK(fam.moduli() == std::vector<Natural>{3, 10, 55});
}

TEST_CASE("complement_moduli: q = 47058 primitive family of 20") {
  const std::vector<Natural> expected = {
      10,    35,    235,   285,   335,   695,   2985,  3775,  5135,  8515,
      8555,  8755,  17015, 18145, 22005, 28355, 41255, 69305, 79655, 128255};
  const ProgressionFamily fam = complement_moduli(Natural(47058), 50);
  CHECK(fam.moduli() == expected);
  CHECK(fam.nQ == 5);
}

TEST_CASE("complement_moduli: empty set refuses") {
  CHECK_THROWS_AS(complement_moduli(Natural("52495396602"), 10), DomainError);
}

TEST_CASE("primitive_reduce on bare moduli") {
  CHECK(primitive_reduce(std::vector<Natural>{2, 4, 6, 3, 9, 5}) ==
        std::vector<Natural>{2, 3, 5});
  CHECK(primitive_reduce(std::vector<Natural>{6, 10, 15, 6}) ==
        std::vector<Natural>{6, 10, 15});
  CHECK(primitive_reduce(std::vector<Natural>{}).empty());
}

TEST_CASE("union_density_exact matches direct counting") {
  const std::vector<std::vector<Natural>> cases = {
      {Natural(2)},
      {Natural(2), Natural(3)},
      {Natural(4), Natural(6), Natural(9)},
      {Natural(6), Natural(10), Natural(15)},
      {Natural(3), Natural(10), Natural(55), Natural(136)},
  };
  for (const auto& mods : cases) {
    CAPTURE(mods.size());
    CHECK(union_density_exact(mods) == union_by_counting(mods));
  }
  CHECK(union_density_exact(std::vector<Natural>{}) == 0);
  CHECK(union_density_exact(std::vector<Natural>{Natural(1), Natural(7)}) ==
        Ratio(1));
}

TEST_CASE("union_density_exact respects the node budget") {
  const std::uint64_t saved = config().ie_node_budget;
  config().ie_node_budget = 3;
  CHECK_THROWS_AS(
      union_density_exact(std::vector<Natural>{3, 10, 55, 136}),
      BudgetExceeded);
  config().ie_node_budget = saved;
}

TEST_CASE("density bounds: q = 1 is exactly one half") {
  const DensityBounds b = density_bounds(Natural(1), 20, 100000);
  CHECK(b.lower == Ratio(1, 2));
  CHECK(b.upper == Ratio(1, 2));
  CHECK(b.tail_value == 0);
}

TEST_CASE("density bounds: q = 2 interval is tight and ordered") {
  const DensityBounds b = density_bounds(Natural(2), 50, 1000000);
  CHECK(b.lower < b.upper);
  CHECK(b.lower > 0);
  CHECK(b.upper < Ratio(1));
  Ratio width = b.upper - b.lower;
  CHECK(width < Ratio(1, 1000));
  // the plain tail is strictly cruder here
  const DensityBounds p = density_bounds(Natural(2), 50, 1000000,
                                         TailMethod::plain);
  CHECK(p.upper == b.upper);
  CHECK(p.lower < b.lower);
}

TEST_CASE("pruned tail shrinks as the cutoff grows") {
  const Ratio t4 = tail_upper_bound(Natural(2), 6, 10000);
  const Ratio t5 = tail_upper_bound(Natural(2), 6, 100000);
  const Ratio t6 = tail_upper_bound(Natural(2), 6, 1000000);
  CHECK(t4 > t5);
  CHECK(t5 > t6);
  CHECK(t6 > 0);
}

TEST_CASE("tail rejects a cutoff below the last family prime") {
  CHECK_THROWS_AS(tail_upper_bound(Natural(2), 50, 100), DomainError);
}

TEST_CASE("density bounds refuse degenerate q") {
  CHECK_THROWS_AS(density_bounds(Natural("52495396602"), 10, 100000),
                  DomainError);
  CHECK_THROWS_AS(
      density_bounds(Natural("8490421583559688410706771261086"), 10, 100000),
      DomainError);
}

TEST_CASE("empirical density: hand-countable windows") {
  CHECK(empirical_density(Natural(1), 1000) == Ratio(1, 2));
  CHECK(empirical_density(Natural(2), 28) == Ratio(17, 28));
  CHECK(empirical_density(Natural("52495396602"), 1000) == 0);
}

TEST_CASE("theoretical lower bound: domain and range") {
  CHECK_THROWS_AS(theoretical_lower_bound(Natural(2), Natural(100)),
                  DomainError);
  CHECK_THROWS_AS(theoretical_lower_bound(Natural("52495396602"),
                                          Natural(1000000)),
                  DomainError);
  const Ratio b = theoretical_lower_bound(Natural(2), Natural(1000000));
  CHECK(b > 0);
  CHECK(b < Ratio(1, 2));
  // the bound tracks 1/log y, so it shrinks as y grows
  const Ratio b2 = theoretical_lower_bound(Natural(2), Natural(10000000));
  CHECK(b2 < b);
  CHECK(b2 > 0);
}

TEST_CASE("prime reciprocal interval") {
  const ConstantCheck c = prime_reciprocal_sum_interval(100000);
  Ratio t(Natural("7731566690497"), Natural("10000000000000"));
  t.canonicalize();
  CHECK(c.contains(t));
  const Ratio width = (c.partial_hi + c.remainder_hi) - c.partial_lo;
  CHECK(width < Ratio(1, 10000));
  CHECK_FALSE(c.contains(Ratio(1, 2)));
  CHECK_FALSE(c.contains(Ratio(4, 5)));
}

TEST_CASE("decimal rendering with directed rounding") {
  CHECK(decimal_lower(Ratio(1, 3), 5) == "0.33333");
  CHECK(decimal_upper(Ratio(1, 3), 5) == "0.33334");
  CHECK(decimal_lower(Ratio(1, 2), 4) == "0.5000");
  CHECK(decimal_upper(Ratio(1, 2), 4) == "0.5000");
  CHECK(decimal_lower(Ratio(7, 2), 2) == "3.50");
  CHECK(decimal_upper(Ratio(-1, 3), 3) == "-0.333");
  CHECK(decimal_lower(Ratio(-1, 3), 3) == "-0.334");
}
