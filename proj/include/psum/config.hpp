#pragma once

#include <cstdint>

namespace psum {

// Runtime budgets and limits. Defaults follow the documented contracts;
// the CLI overlays PSUM_* environment variables and then command-line flags.
struct Config {
  std::uint64_t oracle_k_budget = 10'000'000;        // PSUM_ORACLE_BUDGET
  std::uint64_t membership_oracle_budget = 100'000;  // PSUM_MEMBERSHIP_BUDGET (q*n)
  std::uint64_t sieve_limit = 10'000'000;            // PSUM_SIEVE_LIMIT
  std::uint64_t search_budget = 10'000'000;          // PSUM_SEARCH_BUDGET
  std::uint64_t ie_node_budget = 1ull << 24;         // PSUM_IE_BUDGET
  std::uint64_t tail_cutoff = 10'000'000;            // PSUM_TAIL_CUTOFF
  std::uint64_t trial_division_limit = 1'000'000;    // PSUM_TRIAL_LIMIT
  std::uint64_t rho_iteration_cap = 10'000'000;      // PSUM_RHO_CAP
};

Config& config();

// Reads PSUM_* variables into the global config. Unset/invalid values leave
// the current setting untouched.
void load_config_from_env();

}  // namespace psum
