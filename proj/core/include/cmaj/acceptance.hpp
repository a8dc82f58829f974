#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cmaj {

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

// One gate inside a criterion: passes when statistic <= threshold (or the
// stated strict form for relative-error and distance gates).
struct Check {
  std::string label;
  double statistic = 0;
  double threshold = 0;
  double effect_size = 0;
  std::uint64_t samples = 0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;  // wall time; not part of deterministic reports

  bool pass() const;
};

// Criteria 1..13 with their short names ("transform-exact", ...).
const std::vector<std::string>& acceptance_names();
int acceptance_id(const std::string& name);  // 0 when unknown

// Suite names: "all", "fast" (everything but the infinite-horizon run),
// or a single criterion name. InvalidParameter when unknown.
std::vector<int> acceptance_suite(const std::string& suite);

CriterionResult run_criterion(int id, std::uint64_t seed);

// Runs the given criteria, calling on_result as each finishes. Criterion 6
// runs last so that its audit gate covers the maximum identity on every
// walk sampled by the whole run. Results come back in id order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace cmaj
