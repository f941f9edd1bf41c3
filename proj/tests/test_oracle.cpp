#include <cmath>
#include <random>

#include "doctest.h"
#include "perc/oracle.hpp"

using namespace perc;

TEST_CASE("one-site region") {
  const auto ex = exact_probability(RegionSpec::parallelogram(1, 1), 0.5,
                                    [](const ColorView& c, Workspace&) { return c.is_blue(0); });
  CHECK(ex.fraction() == "1/2");
  CHECK(ex.total == 2);
  const auto biased = exact_probability(RegionSpec::parallelogram(1, 1), 0.3,
                                        [](const ColorView& c, Workspace&) { return c.is_blue(0); });
  CHECK(static_cast<double>(biased.value) == doctest::Approx(0.3));
}

TEST_CASE("duality fixes the parallelogram crossing at one half") {
  const auto ev = ArmEvent::parallelogram_crossing(3, 3, Color::Blue, CrossingDirection::LeftRight);
  const auto ex = exact_event_probability(ev, 0.5);
  CHECK(ex.hits == 256);
  CHECK(ex.total == 512);
  CHECK(ex.fraction() == "1/2");
}

TEST_CASE("dual events have equal probability at one half") {
  for (const auto& ev : {ArmEvent::one_arm(3), ArmEvent::half_plane(1, 4, 2)}) {
    const auto a = exact_event_probability(ev, 0.5), b = exact_event_probability(ev.dual(), 0.5);
    CHECK(a.hits == b.hits);
    CHECK(a.total == b.total);
  }
}

TEST_CASE("hit counts by blue sites reproduce the polynomial") {
  const auto ev = ArmEvent::parallelogram_crossing(3, 2, Color::Blue, CrossingDirection::LeftRight);
  const auto ex = exact_event_probability(ev, 0.37);
  long double poly = 0;
  for (std::size_t k = 0; k < ex.hits_by_blue.size(); ++k)
    poly += ex.hits_by_blue[k] * std::pow(0.37L, k) * std::pow(0.63L, ex.hits_by_blue.size() - 1 - k);
  CHECK(static_cast<double>(ex.value) == doctest::Approx(static_cast<double>(poly)).epsilon(1e-12));
  // Two rows of three: a crossing needs a blue row, or a zig-zag.
  CHECK(exact_event_probability(ev, 1.0).value == 1);
  CHECK(exact_event_probability(ev, 0.0).value == 0);
}

TEST_CASE("workers do not change exact results") {
  const auto ev = ArmEvent::half_plane(1, 4, 1);
  CHECK(exact_event_probability(ev, 0.5, 1) == exact_event_probability(ev, 0.5, 4));
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(exact_probability(RegionSpec::parallelogram(5, 5), 0.5,
                                    [](const ColorView&, Workspace&) { return true; }),
                  BudgetExceeded);
  const auto big = make_region(RegionSpec::parallelogram(5, 4));
  CHECK_THROWS_AS(max_disjoint_paths_bruteforce(sample_config(big, 0.5, 1), Color::Blue, ArcLabel::Left,
                                                ArcLabel::Right),
                  BudgetExceeded);
}

TEST_CASE("colour switching") {
  const auto spec = RegionSpec::parallelogram(3, 3);
  CHECK(color_switch_check(spec, {Color::Blue}, {Color::Yellow}).equal());
  const auto r = color_switch_check(RegionSpec::parallelogram(3, 6), {Color::Blue, Color::Yellow},
                                    {Color::Yellow, Color::Blue});
  CHECK(r.equal());
  CHECK(r.a.hits > 0);
  CHECK_THROWS_AS(color_switch_check(spec, {Color::Blue}, {Color::Blue, Color::Blue}), std::invalid_argument);
}

TEST_CASE("brute-force disjoint paths simple cases") {
  const auto reg = make_region(RegionSpec::parallelogram(2, 2));
  CHECK(max_disjoint_paths_bruteforce(sample_config(reg, 1.0, 0), Color::Blue, ArcLabel::Left, ArcLabel::Right) == 2);
  CHECK(max_disjoint_paths_bruteforce(sample_config(reg, 0.0, 0), Color::Blue, ArcLabel::Left, ArcLabel::Right) == 0);
}

TEST_CASE("max flow equals brute force on every configuration of a 12-site region") {
  const auto reg = make_region(RegionSpec::parallelogram(4, 3));
  REQUIRE(reg->size() == 12);
  for (std::uint64_t m = 0; m < 4096; ++m) {
    const auto c = config_from_mask(reg, m);
    for (Color color : {Color::Blue, Color::Yellow}) {
      REQUIRE(max_disjoint_crossings(c, color, ArcLabel::Left, ArcLabel::Right, 8) ==
              max_disjoint_paths_bruteforce(c, color, ArcLabel::Left, ArcLabel::Right));
      REQUIRE(max_disjoint_crossings(c, color, ArcLabel::Bottom, ArcLabel::Top, 8) ==
              max_disjoint_paths_bruteforce(c, color, ArcLabel::Bottom, ArcLabel::Top));
    }
  }
}

TEST_CASE("max flow equals brute force on an 18-site semi-annulus") {
  const auto reg = make_region(RegionSpec::semi_annulus(0.5, 4.05));
  REQUIRE(reg->size() == 18);
  std::mt19937_64 gen(29);
  for (int t = 0; t < 2000; ++t) {
    const auto c = config_from_mask(reg, gen() & ((1u << 18) - 1));
    REQUIRE(max_disjoint_crossings(c, Color::Blue, ArcLabel::Inner, ArcLabel::Outer, 8) ==
            max_disjoint_paths_bruteforce(c, Color::Blue, ArcLabel::Inner, ArcLabel::Outer));
  }
}
