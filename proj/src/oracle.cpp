#include "perc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace perc {

std::string ExactProbability::fraction() const {
  const std::uint64_t g = std::gcd(hits, total);
  if (g == 0) return "0/1";
  return std::to_string(hits / g) + "/" + std::to_string(total / g);
}

ExactProbability exact_probability(const RegionSpec& spec, double p, const ColorPredicate& event,
                                   unsigned workers, std::size_t budget) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const auto region = make_region(spec);
  require_enumerable(*region, budget);
  const std::size_t n = region->size();
  const std::uint64_t total = std::uint64_t{1} << n;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));

  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(n + 1, 0));
  auto run = [&](unsigned w) {
    Workspace ws;
    const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const std::uint64_t word = mask;
      if (event(ColorView::bits(*region, &word), ws))
        ++counts[w][static_cast<std::size_t>(std::popcount(mask))];
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  ExactProbability out;
  out.total = total;
  out.p = p;
  out.hits_by_blue.assign(n + 1, 0);
  for (const auto& c : counts)
    for (std::size_t k = 0; k <= n; ++k) out.hits_by_blue[k] += c[k];
  const long double lp = p, lq = 1.0L - lp;
  for (std::size_t k = 0; k <= n; ++k) {
    out.hits += out.hits_by_blue[k];
    if (out.hits_by_blue[k] == 0) continue;
    out.value += static_cast<long double>(out.hits_by_blue[k]) * std::pow(lp, static_cast<long double>(k)) *
                 std::pow(lq, static_cast<long double>(n - k));
  }
  if (out.dyadic()) out.value = static_cast<long double>(out.hits) / static_cast<long double>(total);
  return out;
}

ExactProbability exact_event_probability(const ArmEvent& event, double p, unsigned workers) {
  event.validate();
  return exact_probability(
      event.spec, p, [&](const ColorView& colors, Workspace& ws) { return eval_event(colors, event, ws); },
      workers);
}

ColorSwitchResult color_switch_check(const RegionSpec& spec, const std::vector<Color>& seq_a,
                                     const std::vector<Color>& seq_b, unsigned workers) {
  if (seq_a.size() != seq_b.size())
    throw std::invalid_argument("colour sequences must have the same length");
  const ArmEvent a = ArmEvent::prescribed_sequence(spec, seq_a);
  const ArmEvent b = ArmEvent::prescribed_sequence(spec, seq_b);
  a.validate();
  b.validate();
  auto eval = [](const ArmEvent& e) {
    return [&e](const ColorView& colors, Workspace& ws) { return eval_event(colors, e, ws); };
  };
  return {exact_probability(spec, 0.5, eval(a), workers, 22),
          exact_probability(spec, 0.5, eval(b), workers, 22)};
}

namespace {

// Vertex sets of the minimal monochromatic paths from arc a to arc b: each
// meets arc a only at its first site and arc b only at its last.
class PathCollector {
 public:
  PathCollector(const Configuration& config, Color color, ArcLabel a, ArcLabel b)
      : region_(config.region()), config_(config), color_(color), a_(a), b_(b) {}

  std::map<SiteId, std::vector<std::uint32_t>> collect() {
    std::map<SiteId, std::vector<std::uint32_t>> by_start;
    for (SiteId s : region_.arc(a_)) {
      if (config_.color(s) != color_) continue;
      found_.clear();
      extend(s, bit(s));
      std::sort(found_.begin(), found_.end());
      found_.erase(std::unique(found_.begin(), found_.end()), found_.end());
      if (!found_.empty()) by_start[s] = found_;
    }
    return by_start;
  }

 private:
  static std::uint32_t bit(SiteId v) { return std::uint32_t{1} << v; }

  void extend(SiteId v, std::uint32_t path) {
    if (region_.in_arc(v, b_)) {
      found_.push_back(path);
      return;
    }
    for (SiteId w : region_.neighbor_ids(v)) {
      if (w < 0 || (path & bit(w)) || config_.color(w) != color_ || region_.in_arc(w, a_)) continue;
      extend(w, path | bit(w));
    }
  }

  const Region& region_;
  const Configuration& config_;
  Color color_;
  ArcLabel a_, b_;
  std::vector<std::uint32_t> found_;
};

}  // namespace

int max_disjoint_paths_bruteforce(const Configuration& config, Color color, ArcLabel a, ArcLabel b) {
  require_enumerable(config.region(), 18);
  const auto by_start = PathCollector(config, color, a, b).collect();
  std::vector<const std::vector<std::uint32_t>*> groups;
  for (const auto& [start, paths] : by_start) groups.push_back(&paths);

  // Every path meets arc a once, so a family uses each start at most once:
  // decide the starts in order, memoising on (start index, used sites).
  std::unordered_map<std::uint64_t, int> memo;
  auto best = [&](auto&& self, std::size_t i, std::uint32_t used) -> int {
    if (i == groups.size()) return 0;
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | used;
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    int result = self(self, i + 1, used);
    for (std::uint32_t path : *groups[i])
      if (!(path & used)) result = std::max(result, 1 + self(self, i + 1, used | path));
    memo.emplace(key, result);
    return result;
  };
  return best(best, 0, 0);
}

}  // namespace perc
