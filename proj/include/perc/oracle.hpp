#ifndef PERC_ORACLE_HPP
#define PERC_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "perc/config.hpp"
#include "perc/connectivity.hpp"

namespace perc {

/// Exact probability of an event by summing over every colouring.
struct ExactProbability {
  std::uint64_t hits = 0;   // colourings in the event
  std::uint64_t total = 0;  // 2^n
  std::vector<std::uint64_t> hits_by_blue;  // hits split by number of blue sites
  double p = 0.5;
  long double value = 0;

  /// At p = 1/2 the probability is exactly hits / total.
  bool dyadic() const { return p == 0.5; }
  /// Reduced fraction "a/b" (meaningful at p = 1/2 only).
  std::string fraction() const;
  /// Same event probability for every p (compares hit counts by blue count).
  friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
    return a.total == b.total && a.hits_by_blue == b.hits_by_blue;
  }
};

using ColorPredicate = std::function<bool(const ColorView&, Workspace&)>;

/// Throws BudgetExceeded above `budget` sites.
ExactProbability exact_probability(const RegionSpec& spec, double p, const ColorPredicate& event,
                                   unsigned workers = 1, std::size_t budget = kEnumerationBudget);
ExactProbability exact_event_probability(const ArmEvent& event, double p, unsigned workers = 1);

struct ColorSwitchResult {
  ExactProbability a, b;
  bool equal() const { return a.total == b.total && a.hits == b.hits; }
};

/// Exact probabilities of ordered crossings with colour sequences seqA and
/// seqB (parallelogram Left to Right, or semi-annulus inner to outer).
/// Regions of at most 22 sites.
ColorSwitchResult color_switch_check(const RegionSpec& spec, const std::vector<Color>& seq_a,
                                     const std::vector<Color>& seq_b, unsigned workers = 1);

/// Largest family of vertex-disjoint paths of `color` from arc a to arc b,
/// by exhaustive search over simple paths. Regions of at most 18 sites.
int max_disjoint_paths_bruteforce(const Configuration& config, Color color, ArcLabel a, ArcLabel b);

}  // namespace perc

#endif  // PERC_ORACLE_HPP
