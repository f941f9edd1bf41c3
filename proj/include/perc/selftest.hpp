#ifndef PERC_SELFTEST_HPP
#define PERC_SELFTEST_HPP

#include <string>
#include <vector>

namespace perc {

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Names of the exact checks, in the order they run.
const std::vector<std::string>& selftest_names();

/// Runs every check. `fault` names a check whose evaluator is negated, to
/// show that the harness notices; empty for a normal run.
std::vector<SelfCheck> run_selftest(const std::string& fault = "", unsigned workers = 1);

}  // namespace perc

#endif  // PERC_SELFTEST_HPP
