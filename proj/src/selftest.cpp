#include "perc/selftest.hpp"

#include <chrono>
#include <functional>

#include "perc/estimate.hpp"
#include "perc/explore.hpp"
#include "perc/oracle.hpp"
#include "perc/rng.hpp"

namespace perc {

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

// Each check receives `negate`, which flips the verdict of the evaluator it
// is exercising.
Outcome check_duality(bool negate) {
  const auto event = ArmEvent::parallelogram_crossing(3, 3, Color::Blue, CrossingDirection::LeftRight);
  const auto exact = exact_probability(event.spec, 0.5, [&](const ColorView& c, Workspace& ws) {
    return eval_event(c, event, ws) != negate;
  });
  const auto region = make_region(event.spec);
  std::uint64_t bad = 0;
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    const auto [blue, yellow] = parallelogram_duality(config_from_mask(region, mask));
    if ((blue != negate) == yellow) ++bad;
  }
  return {exact.fraction() == "1/2" && bad == 0,
          "P(blue LR) = " + exact.fraction() + ", xor failures " + std::to_string(bad) + "/512"};
}

Outcome check_color_switching(bool negate, unsigned workers) {
  const std::vector<Color> bb{Color::Blue, Color::Blue}, by{Color::Blue, Color::Yellow};
  auto result = color_switch_check(RegionSpec::parallelogram(3, 6), bb, by, workers);
  if (negate) result.a.hits = result.a.total - result.a.hits;
  return {result.equal(), "(B,B) " + result.a.fraction() + " vs (B,Y) " + result.b.fraction()};
}

Outcome check_menger(bool negate) {
  const auto region = make_region(RegionSpec::parallelogram(4, 3));
  std::uint64_t bad = 0, cases = 0;
  Workspace ws;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << region->size()); ++mask) {
    const auto config = config_from_mask(region, mask);
    for (Color color : {Color::Blue, Color::Yellow})
      for (auto [a, b] : {std::pair{ArcLabel::Left, ArcLabel::Right}, {ArcLabel::Bottom, ArcLabel::Top}}) {
        int flow = max_disjoint_crossings(config.view(), color, a, b, 8, ws);
        if (negate) flow = flow == 0 ? 1 : 0;
        ++cases;
        if (flow != max_disjoint_paths_bruteforce(config, color, a, b)) ++bad;
      }
  }
  return {bad == 0, std::to_string(bad) + " disagreements in " + std::to_string(cases) + " cases"};
}

Outcome check_nested(bool negate) {
  const auto region = make_region(RegionSpec::annulus(1.0, 3.0));
  std::uint64_t bad = 0;
  Workspace ws;
  const std::uint64_t total = std::uint64_t{1} << region->size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const std::uint64_t word = mask;
    const auto view = ColorView::bits(*region, &word);
    const bool arm = arc_cluster_count(view, Color::Blue, ArcLabel::Inner, ArcLabel::Outer, 1, ws) >= 1;
    if ((one_arm_nested(view) != negate) != arm) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " disagreements in " + std::to_string(total) +
                        " configurations of " + region->spec().to_string()};
}

Outcome check_fkg(bool negate, unsigned workers) {
  const auto spec = RegionSpec::parallelogram(4, 4);
  const auto lr = ArmEvent::parallelogram_crossing(4, 4, Color::Blue, CrossingDirection::LeftRight);
  const auto tb = ArmEvent::parallelogram_crossing(4, 4, Color::Blue, CrossingDirection::TopBottom);
  auto event_a = [&](const ColorView& c, Workspace& ws) { return eval_event(c, lr, ws); };
  auto event_b = [&](const ColorView& c, Workspace& ws) { return eval_event(c, tb, ws) != negate; };
  const auto a = exact_probability(spec, 0.5, event_a, workers);
  const auto b = exact_probability(spec, 0.5, event_b, workers);
  const auto ab = exact_probability(
      spec, 0.5, [&](const ColorView& c, Workspace& ws) { return event_a(c, ws) && event_b(c, ws); },
      workers);
  // P(AB) >= P(A)P(B)  <=>  hits_AB * 2^n >= hits_A * hits_B
  const bool ok = static_cast<unsigned __int128>(ab.hits) * ab.total >=
                  static_cast<unsigned __int128>(a.hits) * b.hits;
  return {ok, "P(A)=" + a.fraction() + " P(B)=" + b.fraction() + " P(AB)=" + ab.fraction()};
}

Outcome check_submultiplicativity(bool negate) {
  constexpr std::uint64_t kTrials = 2000;
  std::uint64_t bad = 0;
  for (int j : {1, 2}) {
    const auto full = ArmEvent::half_plane(4, 64, j), inner = ArmEvent::half_plane(4, 16, j),
               outer = ArmEvent::half_plane(16, 64, j);
    const auto rf = make_region(full.spec), ri = make_region(inner.spec), ro = make_region(outer.spec);
    Workspace ws;
    for (std::uint64_t i = 0; i < kTrials; ++i) {
      const std::uint64_t seed = derive_seed(0x5eed, i);
      const bool g = eval_event(ColorView::lazy(*rf, seed, 0.5), full, ws) != negate;
      if (g && !(eval_event(ColorView::lazy(*ri, seed, 0.5), inner, ws) &&
                 eval_event(ColorView::lazy(*ro, seed, 0.5), outer, ws)))
        ++bad;
    }
  }
  return {bad == 0, std::to_string(bad) + " containment failures in 2 x " + std::to_string(kTrials) +
                        " trials"};
}

}  // namespace

const std::vector<std::string>& selftest_names() {
  static const std::vector<std::string> names{"duality", "color_switching", "menger",
                                              "nested_one_arm", "fkg", "submultiplicativity"};
  return names;
}

std::vector<SelfCheck> run_selftest(const std::string& fault, unsigned workers) {
  const std::vector<std::function<Outcome(bool)>> checks{
      check_duality,
      [&](bool n) { return check_color_switching(n, workers); },
      check_menger,
      check_nested,
      [&](bool n) { return check_fkg(n, workers); },
      check_submultiplicativity,
  };
  std::vector<SelfCheck> out;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& name = selftest_names()[k];
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = checks[k](name == fault);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    out.push_back({name, o.passed, o.detail, dt.count()});
  }
  return out;
}

}  // namespace perc
