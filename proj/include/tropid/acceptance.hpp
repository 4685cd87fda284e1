#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace tropid {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Reduced sample and trial counts; same criteria.
  bool quick = false;
  std::uint64_t seed = 20'240'601;
  std::filesystem::path bases_dir;
  /// Criteria to run (1..10); empty means all.
  std::vector<int> only;
  /// Called as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "criterion 3 PASS  Prop. ... (1.2 s): detail".
std::string format_result(const CriterionResult& r);

}  // namespace tropid
