// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Pass --quick for reduced counts, or criterion numbers to run a
// subset.
#include <cstdlib>
#include <iostream>
#include <string>

#include "tropid/acceptance.hpp"

int main(int argc, char** argv) {
  tropid::AcceptanceOptions options;
  options.bases_dir = TROPID_BASES_DIR;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--quick") {
      options.quick = true;
    } else {
      options.only.push_back(std::stoi(arg));
    }
  }
  if (const char* seed = std::getenv("TROPID_SEED")) options.seed = std::stoull(seed);
  options.on_result = [](const tropid::CriterionResult& r) { std::cout << tropid::format_result(r) << std::endl; };

  bool ok = true;
  for (const auto& r : tropid::run_acceptance(options)) ok = ok && r.passed;
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return ok ? 0 : 1;
}
