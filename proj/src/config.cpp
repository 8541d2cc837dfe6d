#include "psum/config.hpp"

#include <cstdlib>
#include <string>

namespace psum {

Config& config() {
  static Config instance;
  return instance;
}

namespace {

void read_env(const char* name, std::uint64_t& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t pos = 0;
    const unsigned long long value = std::stoull(raw, &pos);
    if (pos == std::string(raw).size() && value > 0) slot = value;
  } catch (const std::exception&) {
    // invalid values leave the current setting untouched
  }
}

}  // namespace

void load_config_from_env() {
  Config& c = config();
  read_env("PSUM_ORACLE_BUDGET", c.oracle_k_budget);
  read_env("PSUM_MEMBERSHIP_BUDGET", c.membership_oracle_budget);
  read_env("PSUM_SIEVE_LIMIT", c.sieve_limit);
  read_env("PSUM_SEARCH_BUDGET", c.search_budget);
  read_env("PSUM_IE_BUDGET", c.ie_node_budget);
  read_env("PSUM_TAIL_CUTOFF", c.tail_cutoff);
  read_env("PSUM_TRIAL_LIMIT", c.trial_division_limit);
  read_env("PSUM_RHO_CAP", c.rho_iteration_cap);
}

}  // namespace psum
