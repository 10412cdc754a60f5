#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rmt::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

using Reporter = std::function<void(const CriterionResult&)>;

/// Runs the fourteen acceptance criteria in order; `report` is called after
/// each one. A criterion that throws counts as failed.
std::vector<CriterionResult> run_all(int threads, const Reporter& report = {});

/// "PASS [ 1] name (1.23 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace rmt::acceptance
