#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "areaflow/diagnostics.hpp"

namespace areaflow::acceptance {

struct Options {
  double inner_tol = 1e-8;
  /// Multiplies every time step of the battery (a refinement-study knob).
  double tau_scale = 1.0;
  std::uint64_t seed = 20140801;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  ///< 0 when the criterion has no runtime budget
  std::vector<Verdict> checks;
  std::string summary;
};

/// Runs the numbered verification criteria in sequence. Runs shared between
/// criteria are computed once; conservation and dissipation (criterion 4) are
/// checked on every trajectory the battery produces.
class Suite {
 public:
  explicit Suite(Options options = {});
  ~Suite();
  Suite(const Suite&) = delete;
  Suite& operator=(const Suite&) = delete;

  CriterionResult run(int id);
  /// All criteria in order 1..10 (criterion 4 last internally, reported in place).
  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

  static constexpr int kCount = 10;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace areaflow::acceptance
