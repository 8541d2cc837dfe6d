#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "psum/acceptance.hpp"
#include "psum/arith.hpp"
#include "psum/config.hpp"

namespace {

void print_result(const psum::CriterionResult& r) {
  std::printf("criterion %02d [%s] %s (%.2f s)\n", r.id,
              r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
  std::istringstream lines(r.detail);
  std::string line;
  while (std::getline(lines, line)) {
    std::printf("    %s\n", line.c_str());
  }
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  psum::load_config_from_env();
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  try {
    std::vector<psum::CriterionResult> results;
    if (selected != 0) {
      results.push_back(psum::run_criterion(selected));
    } else {
      for (int id = 1; id <= psum::kCriterionCount; ++id) {
        results.push_back(psum::run_criterion(id));
        print_result(results.back());
      }
    }
    if (selected != 0) print_result(results.front());
    int failed = 0;
    for (const auto& r : results) {
      if (!r.pass) ++failed;
    }
    if (selected == 0) {
      std::printf("%d passed, %d failed\n",
                  static_cast<int>(results.size()) - failed, failed);
    }
    return failed == 0 ? 0 : 1;
  } catch (const psum::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
