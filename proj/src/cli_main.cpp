#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "psum/acceptance.hpp"
#include "psum/arith.hpp"
#include "psum/config.hpp"
#include "psum/congruence.hpp"
#include "psum/density.hpp"
#include "psum/nq.hpp"
#include "psum/powersum.hpp"

namespace {

using nlohmann::json;  // std::map-backed: keys serialize sorted
using namespace psum;

constexpr const char* kToolName = "psum";
constexpr const char* kToolVersion = "0.1.0";

struct CliState {
  bool json_out = false;
  bool timing = false;
  bool ran = false;
  bool all_criteria_passed = true;
  std::string command;
  json parameters = json::object();
  json result = json::object();
  double elapsed_ms = 0.0;
};

CliState g_state;

Natural parse_natural(const std::string& text, const char* what) {
  if (text.empty()) throw DomainError(std::string(what) + " must be a decimal number");
  for (const char c : text) {
    if (c < '0' || c > '9') {
      throw DomainError(std::string(what) + " must be a non-negative decimal number");
    }
  }
  return Natural(text, 10);  // base fixed so leading zeros stay decimal
}

json ratio_json(const Ratio& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

json provenance_json() {
  const Config& c = config();
  return json{
      {"name", kToolName},
      {"version", kToolVersion},
      {"defaults",
       json{{"oracle_budget", c.oracle_k_budget},
            {"membership_budget", c.membership_oracle_budget},
            {"sieve_limit", c.sieve_limit},
            {"search_budget", c.search_budget},
            {"ie_budget", c.ie_node_budget},
            {"tail_cutoff", c.tail_cutoff},
            {"trial_limit", c.trial_division_limit},
            {"rho_cap", c.rho_iteration_cap}}}};
}

void run_op(const std::string& command, json parameters,
            const std::function<json()>& op) {
  const auto t0 = std::chrono::steady_clock::now();
  json result = op();
  const auto t1 = std::chrono::steady_clock::now();
  g_state.ran = true;
  g_state.command = command;
  g_state.parameters = std::move(parameters);
  g_state.result = std::move(result);
  g_state.elapsed_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out = "[";
    bool first = true;
    for (const json& e : v) {
      if (!first) out += ", ";
      out += value_text(e);
      first = false;
    }
    return out + "]";
  }
  // exact fractions read better as num/den in text mode
  if (v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den")) {
    return v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
  }
  return v.dump();
}

void emit_output() {
  if (!g_state.ran) return;
  if (g_state.json_out) {
    json envelope{{"command", g_state.command},
                  {"parameters", g_state.parameters},
                  {"provenance", provenance_json()},
                  {"result", g_state.result}};
    if (g_state.timing) {
      envelope["timing_ms"] =
          static_cast<std::int64_t>(g_state.elapsed_ms + 0.5);
    }
    std::cout << envelope.dump(2) << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& item : g_state.result.items()) {
    width = std::max(width, item.key().size());
  }
  for (const auto& item : g_state.result.items()) {
    std::cout << item.key() << std::string(width - item.key().size(), ' ')
              << " = " << value_text(item.value()) << "\n";
  }
  if (g_state.timing) {
    std::cout << "(" << g_state.elapsed_ms << " ms)\n";
  }
}

json vector_json(const std::vector<std::uint64_t>& values) {
  json arr = json::array();
  for (const std::uint64_t v : values) arr.push_back(std::to_string(v));
  return arr;
}

void setup_powersum(CLI::App& app) {
  auto* cmd = app.add_subcommand("powersum", "S_m(k) mod a given integer");
  auto m = std::make_shared<std::string>();
  auto k = std::make_shared<std::string>();
  auto mod = std::make_shared<std::string>();
  auto method = std::make_shared<std::string>("auto");
  cmd->add_option("--m", *m, "exponent m >= 1")->required();
  cmd->add_option("--k", *k, "summation limit k >= 1")->required();
  cmd->add_option("--mod", *mod, "modulus >= 1")->required();
  cmd->add_option("--method", *method, "auto | naive | fast")
      ->check(CLI::IsMember({"auto", "naive", "fast"}));
  cmd->callback([m, k, mod, method] {
    run_op("powersum",
           json{{"m", *m}, {"k", *k}, {"mod", *mod}, {"method", *method}},
           [&]() -> json {
             PowerSumQuery query{parse_natural(*m, "--m"),
                                 parse_natural(*k, "--k"),
                                 parse_natural(*mod, "--mod")};
             std::string used = *method;
             if (used == "auto") {
               used = query.modulus >= 1 && query.k >= 1 &&
                              mpz_divisible_p(query.k.get_mpz_t(),
                                              query.modulus.get_mpz_t())
                          ? "fast"
                          : "naive";
             }
             const Natural value = used == "fast" ? power_sum_fast_mod(query)
                                                  : power_sum_naive_mod(query);
             json result{{"value", value.get_str()}, {"method_used", used}};
             if (used == "fast" && query.m == 1 &&
                 mpz_divisible_ui_p(query.modulus.get_mpz_t(), 4)) {
               result["note"] =
                   "two-power branch with m=1, t>1 follows direct computation "
                   "(2^(t-1)); the stated closed form -1 disagrees with "
                   "S_1(4) = 10 = 2 (mod 4)";
             }
             return result;
           });
  });
}

void setup_pseudoperfect(CLI::App& app) {
  auto* cmd = app.add_subcommand("pseudoperfect",
                                 "primary pseudoperfect predicates and search");
  cmd->require_subcommand(1);

  auto* check = cmd->add_subcommand("check", "evaluate one n");
  auto n = std::make_shared<std::string>();
  check->add_option("--n", *n, "n >= 1")->required();
  check->callback([n] {
    run_op("pseudoperfect check", json{{"n", *n}}, [&]() -> json {
      const PseudoperfectReport report =
          pseudoperfect_check(parse_natural(*n, "--n"));
      return json{{"n", report.n.get_str()},
                  {"is_primary", report.is_primary},
                  {"is_weak", report.is_weak},
                  {"witness_sum", report.witness_sum.get_str()}};
    });
  });

  auto* search = cmd->add_subcommand("search", "all values up to a limit");
  auto limit = std::make_shared<std::uint64_t>(0);
  auto weak = std::make_shared<bool>(false);
  search->add_option("--limit", *limit, "search limit")->required();
  search->add_flag("--weak", *weak, "weak variant (mod-n congruence)");
  search->callback([limit, weak] {
    run_op("pseudoperfect search",
           json{{"limit", *limit}, {"weak", *weak}}, [&]() -> json {
             const auto values = search_pseudoperfect(*limit, *weak);
             return json{{"count", values.size()},
                         {"values", vector_json(values)}};
           });
  });
}

void setup_closure(CLI::App& app) {
  auto* cmd = app.add_subcommand("closure", "finite closure enumerations");
  cmd->require_subcommand(1);

  auto* primes = cmd->add_subcommand(
      "primes", "primes joining when p-1 is square-free over the set");
  auto plimit = std::make_shared<std::uint64_t>(0);
  primes->add_option("--limit", *plimit, "prime limit")->required();
  primes->callback([plimit] {
    run_op("closure primes", json{{"limit", *plimit}}, [&]() -> json {
      const auto values = closed_prime_fixpoint(*plimit);
      return json{{"count", values.size()}, {"values", vector_json(values)}};
    });
  });

  auto* sqf = cmd->add_subcommand(
      "squarefree", "square-free v with p | v implying (p-1) | v");
  auto slimit = std::make_shared<std::uint64_t>(0);
  sqf->add_option("--limit", *slimit, "value limit")->required();
  sqf->callback([slimit] {
    run_op("closure squarefree", json{{"limit", *slimit}}, [&]() -> json {
      const auto values = closed_squarefree_fixpoint(*slimit);
      return json{{"count", values.size()}, {"values", vector_json(values)}};
    });
  });
}

void setup_special_set(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("special-set", "m <= limit with S_m(m) = 1 (mod m)");
  auto limit = std::make_shared<std::uint64_t>(0);
  cmd->add_option("--limit", *limit, "value limit")->required();
  cmd->callback([limit] {
    run_op("special-set", json{{"limit", *limit}}, [&]() -> json {
      const auto values = special_set_S(*limit);
      return json{{"count", values.size()}, {"values", vector_json(values)}};
    });
  });
}

void setup_nq(CLI::App& app) {
  auto* cmd = app.add_subcommand("nq", "the solution sets N_q");
  cmd->require_subcommand(1);

  auto* member = cmd->add_subcommand("member", "membership test");
  auto q = std::make_shared<std::string>();
  auto n = std::make_shared<std::string>();
  auto method = std::make_shared<std::string>("fast");
  member->add_option("--q", *q, "q >= 1")->required();
  member->add_option("--n", *n, "n >= 1")->required();
  member->add_option("--method", *method, "fast | oracle")
      ->check(CLI::IsMember({"fast", "oracle"}));
  member->callback([q, n, method] {
    run_op("nq member",
           json{{"q", *q}, {"n", *n}, {"method", *method}}, [&]() -> json {
             const Natural qv = parse_natural(*q, "--q");
             const Natural nv = parse_natural(*n, "--n");
             if (*method == "oracle") {
               return json{{"member", membership_oracle(qv, nv)},
                           {"method_used", "oracle"}};
             }
             const MembershipVerdict v = membership_fast(qv, nv);
             json result{{"member", v.member}, {"method_used", "fast"}};
             if (v.failing_condition) {
               result["failing_condition"] = to_string(*v.failing_condition);
             }
             if (v.witness) result["witness"] = v.witness->get_str();
             return result;
           });
  });

  auto* profile = cmd->add_subcommand("profile", "nQ, emptiness, minimum");
  auto pq = std::make_shared<std::string>();
  profile->add_option("--q", *pq, "weak primary pseudoperfect q (or 1)")
      ->required();
  profile->callback([pq] {
    run_op("nq profile", json{{"q", *pq}}, [&]() -> json {
      const NQProfile p = nq_profile(parse_natural(*pq, "--q"));
      json result{{"q", p.q.get_str()},
                  {"nQ", p.nQ.get_str()},
                  {"empty", p.empty}};
      if (p.min_element) result["min_element"] = p.min_element->get_str();
      if (p.witness) result["witness"] = p.witness->get_str();
      return result;
    });
  });

  auto* enumerate = cmd->add_subcommand("enumerate", "members up to a limit");
  auto eq = std::make_shared<std::string>();
  auto elimit = std::make_shared<std::uint64_t>(0);
  enumerate->add_option("--q", *eq, "q >= 1")->required();
  enumerate->add_option("--limit", *elimit, "enumeration limit")->required();
  enumerate->callback([eq, elimit] {
    run_op("nq enumerate", json{{"q", *eq}, {"limit", *elimit}},
           [&]() -> json {
             const auto values =
                 enumerate_NQ(parse_natural(*eq, "--q"), *elimit);
             return json{{"count", values.size()},
                         {"values", vector_json(values)}};
           });
  });
}

void setup_density(CLI::App& app) {
  auto* cmd = app.add_subcommand("density", "asymptotic density of N_q");
  cmd->require_subcommand(1);

  auto* bounds = cmd->add_subcommand("bounds", "exact-rational density bounds");
  auto q = std::make_shared<std::string>();
  auto primes = std::make_shared<std::uint64_t>(50);
  auto cutoff = std::make_shared<std::uint64_t>(0);
  auto tail_method = std::make_shared<std::string>("pruned");
  bounds->add_option("--q", *q, "weak primary pseudoperfect q (or 1)")
      ->required();
  bounds->add_option("--primes", *primes, "finite-part prime count");
  bounds->add_option("--tail-cutoff", *cutoff,
                     "tail prime cutoff (default: configured tail cutoff)");
  bounds->add_option("--tail-method", *tail_method, "pruned | plain")
      ->check(CLI::IsMember({"pruned", "plain"}));
  bounds->callback([q, primes, cutoff, tail_method] {
    run_op("density bounds",
           json{{"q", *q},
                {"primes", *primes},
                {"tail_cutoff", *cutoff},
                {"tail_method", *tail_method}},
           [&]() -> json {
             const std::uint64_t c =
                 *cutoff == 0 ? config().tail_cutoff : *cutoff;
             const TailMethod method = *tail_method == "plain"
                                           ? TailMethod::plain
                                           : TailMethod::pruned;
             const DensityBounds b = density_bounds(
                 parse_natural(*q, "--q"), *primes, c, method);
             return json{{"q", b.q.get_str()},
                         {"nQ", b.nQ.get_str()},
                         {"prime_count", b.prime_cutoff_index},
                         {"tail_cutoff", b.tail_cutoff},
                         {"tail_method", b.tail_method},
                         {"lower", ratio_json(b.lower)},
                         {"upper", ratio_json(b.upper)},
                         {"lower_decimal", decimal_lower(b.lower, 10)},
                         {"upper_decimal", decimal_upper(b.upper, 10)},
                         {"union_exact", ratio_json(b.union_exact)},
                         {"tail_value", ratio_json(b.tail_value)}};
           });
  });

  auto* empirical = cmd->add_subcommand("empirical", "membership count / limit");
  auto eq = std::make_shared<std::string>();
  auto elimit = std::make_shared<std::uint64_t>(0);
  empirical->add_option("--q", *eq, "q >= 1")->required();
  empirical->add_option("--limit", *elimit, "enumeration limit")->required();
  empirical->callback([eq, elimit] {
    run_op("density empirical", json{{"q", *eq}, {"limit", *elimit}},
           [&]() -> json {
             const Natural qv = parse_natural(*eq, "--q");
             const std::size_t count = enumerate_NQ(qv, *elimit).size();
             Ratio r{Natural(count), Natural(*elimit)};
             r.canonicalize();
             return json{{"count", count},
                         {"limit", *elimit},
                         {"density", ratio_json(r)},
                         {"decimal", decimal_lower(r, 10)}};
           });
  });

  auto* moduli = cmd->add_subcommand("moduli", "primitive complement families");
  auto mq = std::make_shared<std::string>();
  auto mprimes = std::make_shared<std::uint64_t>(50);
  moduli->add_option("--q", *mq, "weak primary pseudoperfect q (or 1)")
      ->required();
  moduli->add_option("--primes", *mprimes, "finite-part prime count");
  moduli->callback([mq, mprimes] {
    run_op("density moduli", json{{"q", *mq}, {"primes", *mprimes}},
           [&]() -> json {
             const ProgressionFamily family =
                 complement_moduli(parse_natural(*mq, "--q"), *mprimes);
             json entries = json::array();
             for (const ProgressionEntry& e : family.entries) {
               entries.push_back(json{{"modulus", e.modulus.get_str()},
                                      {"d", e.d.get_str()},
                                      {"p", e.p.get_str()},
                                      {"tag", e.tag}});
             }
             json mods = json::array();
             for (const Natural& m : family.moduli()) mods.push_back(m.get_str());
             return json{{"q", family.q.get_str()},
                         {"nQ", family.nQ.get_str()},
                         {"prime_count", family.prime_count},
                         {"count", family.entries.size()},
                         {"moduli", mods},
                         {"families", entries}};
           });
  });

  auto* theo = cmd->add_subcommand("theoretical-lower",
                                   "provable lower bound at evaluation point y");
  auto tq = std::make_shared<std::string>();
  auto ty = std::make_shared<std::string>();
  theo->add_option("--q", *tq, "weak primary pseudoperfect q (or 1)")
      ->required();
  theo->add_option("--y", *ty, "evaluation point (default q*nQ)");
  theo->callback([tq, ty] {
    run_op("density theoretical-lower", json{{"q", *tq}, {"y", *ty}},
           [&]() -> json {
             const Natural qv = parse_natural(*tq, "--q");
             const Natural yv = ty->empty()
                                    ? qv * compute_nQ(qv)
                                    : parse_natural(*ty, "--y");
             const Ratio bound = theoretical_lower_bound(qv, yv);
             return json{{"q", qv.get_str()},
                         {"y", yv.get_str()},
                         {"bound", ratio_json(bound)},
                         {"approx", bound.get_d()}};
           });
  });
}

void setup_selftest(CLI::App& app) {
  auto* cmd = app.add_subcommand("selftest", "run the acceptance suite");
  auto criterion = std::make_shared<int>(0);
  cmd->add_option("--criterion", *criterion, "run a single criterion (1-13)")
      ->check(CLI::Range(1, kCriterionCount));
  cmd->callback([criterion] {
    run_op("selftest", json{{"criterion", *criterion}}, [&]() -> json {
      std::vector<CriterionResult> results;
      if (*criterion > 0) {
        results.push_back(run_criterion(*criterion));
      } else {
        results = run_all_criteria();
      }
      json arr = json::array();
      std::size_t passed = 0;
      for (const CriterionResult& r : results) {
        arr.push_back(json{{"id", r.id},
                           {"title", r.title},
                           {"pass", r.pass},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
        if (r.pass) {
          ++passed;
        } else {
          g_state.all_criteria_passed = false;
        }
      }
      return json{{"criteria", arr},
                  {"passed", passed},
                  {"failed", results.size() - passed}};
    });
  });
}

void print_selftest_text(const json& result) {
  for (const json& c : result.at("criteria")) {
    std::printf("criterion %02d [%s] %s (%.2f s)\n", c.at("id").get<int>(),
                c.at("pass").get<bool>() ? "PASS" : "FAIL",
                c.at("title").get<std::string>().c_str(),
                c.at("seconds").get<double>());
    const std::string detail = c.at("detail").get<std::string>();
    if (!detail.empty()) {
      std::size_t start = 0;
      while (start < detail.size()) {
        std::size_t end = detail.find('\n', start);
        if (end == std::string::npos) end = detail.size();
        std::printf("    %s\n", detail.substr(start, end - start).c_str());
        start = end + 1;
      }
    }
  }
  std::printf("%llu passed, %llu failed\n",
              static_cast<unsigned long long>(
                  result.at("passed").get<std::size_t>()),
              static_cast<unsigned long long>(
                  result.at("failed").get<std::size_t>()));
}

}  // namespace

int main(int argc, char** argv) {
  load_config_from_env();

  CLI::App app{"exact power-sum congruence engine"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  app.add_flag("--json", g_state.json_out, "machine-readable JSON output");
  app.add_flag("--timing", g_state.timing,
               "include wall-clock timing in the output");
  app.add_option("--oracle-budget", config().oracle_k_budget,
                 "naive power-sum summation limit");
  app.add_option("--membership-budget", config().membership_oracle_budget,
                 "membership oracle q*n limit");
  app.add_option("--sieve-limit", config().sieve_limit,
                 "sieve allocation limit");
  app.add_option("--search-budget", config().search_budget,
                 "bulk search limit");
  app.add_option("--ie-budget", config().ie_node_budget,
                 "inclusion-exclusion node budget");
  app.add_option("--trial-limit", config().trial_division_limit,
                 "trial division bound");
  app.add_option("--rho-cap", config().rho_iteration_cap,
                 "rho factorization iteration cap");

  setup_powersum(app);
  setup_pseudoperfect(app);
  setup_closure(app);
  setup_special_set(app);
  setup_nq(app);
  setup_selftest(app);
  setup_density(app);

  // let --json/--timing/budget flags appear after the subcommand too
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands(
             [](const CLI::App*) { return true; })) {
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (g_state.command == "selftest" && !g_state.json_out) {
    print_selftest_text(g_state.result);
  } else {
    emit_output();
  }
  return g_state.command == "selftest" && !g_state.all_criteria_passed ? 1 : 0;
}
