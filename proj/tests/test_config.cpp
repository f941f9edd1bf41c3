#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "perc/config.hpp"
#include "perc/connectivity.hpp"

using namespace perc;

TEST_CASE("swap is an involution") {
  for (Color c : {Color::Blue, Color::Yellow}) {
    CHECK(swap(c) != c);
    CHECK(swap(swap(c)) == c);
  }
}

TEST_CASE("degenerate p gives a single colour") {
  const auto reg = make_region(RegionSpec::disc(20));
  CHECK(sample_config(reg, 1.0, 3).blue_count() == reg->size());
  CHECK(sample_config(reg, 0.0, 3).blue_count() == 0);
  CHECK_THROWS_AS(sample_config(reg, 1.5, 3), std::invalid_argument);
}

TEST_CASE("blue fraction concentrates at p = 1/2") {
  const auto reg = make_region(RegionSpec::parallelogram(1000, 1000));
  const double frac = static_cast<double>(sample_config(reg, 0.5, 42).blue_count()) / 1e6;
  CHECK(frac > 0.5 - 0.0015);
  CHECK(frac < 0.5 + 0.0015);
}

TEST_CASE("sampling is deterministic and matches lazy views") {
  const auto reg = make_region(RegionSpec::annulus(2, 20));
  const auto a = sample_config(reg, 0.5, 77), b = sample_config(reg, 0.5, 77);
  CHECK(a == b);
  CHECK_FALSE(a == sample_config(reg, 0.5, 78));
  const auto lazy = ColorView::lazy(*reg, 77, 0.5);
  for (SiteId id = 0; id < static_cast<SiteId>(reg->size()); ++id) CHECK(lazy.is_blue(id) == a.is_blue(id));
}

TEST_CASE("complement") {
  const auto reg = make_region(RegionSpec::parallelogram(5, 4));
  const auto blue = config_from_mask(reg, (std::uint64_t{1} << 20) - 1);
  CHECK(complement(blue).blue_count() == 0);
  const auto c = sample_config(reg, 0.3, 5);
  CHECK(complement(complement(c)) == c);
  CHECK(complement(c).p() == doctest::Approx(0.7));
}

TEST_CASE("complement swaps monochromatic events") {
  const auto lr_b = ArmEvent::parallelogram_crossing(3, 3, Color::Blue, CrossingDirection::LeftRight);
  const auto lr_y = ArmEvent::parallelogram_crossing(3, 3, Color::Yellow, CrossingDirection::LeftRight);
  const auto reg = make_region(lr_b.spec);
  Workspace ws;
  for (std::uint64_t m = 0; m < 512; ++m) {
    const auto c = config_from_mask(reg, m);
    CHECK(eval_event(complement(c).view(), lr_b, ws) == eval_event(c.view(), lr_y, ws));
  }
}

TEST_CASE("enumeration") {
  CHECK(enumerate_configs(make_region(RegionSpec::parallelogram(1, 1))).count() == 2);
  const auto stream = enumerate_configs(make_region(RegionSpec::parallelogram(3, 3)));
  std::set<std::vector<std::uint64_t>> seen;
  std::size_t blue = 0;
  for (const auto& c : stream) {
    seen.insert({c.words().begin(), c.words().end()});
    blue += c.blue_count();
  }
  CHECK(seen.size() == 512);
  CHECK(static_cast<double>(blue) / 512 == 4.5);
  CHECK_THROWS_AS(enumerate_configs(make_region(RegionSpec::parallelogram(5, 5))), BudgetExceeded);
}

TEST_CASE("flip_site") {
  const auto reg = make_region(RegionSpec::parallelogram(4, 4));
  const auto c = sample_config(reg, 0.5, 9);
  const auto f = flip_site(c, {2, 1});
  CHECK_FALSE(f == c);
  CHECK(flip_site(f, {2, 1}) == c);
  CHECK_THROWS_AS(flip_site(c, {7, 7}), std::invalid_argument);
}

TEST_CASE("yellow to blue flips never destroy a blue crossing") {
  const auto ev = ArmEvent::parallelogram_crossing(3, 3, Color::Blue, CrossingDirection::LeftRight);
  const auto reg = make_region(ev.spec);
  Workspace ws;
  std::size_t checked = 0;
  for (std::uint64_t m = 0; m < 512; ++m) {
    const auto c = config_from_mask(reg, m);
    if (!eval_event(c.view(), ev, ws)) continue;
    for (SiteId id = 0; id < 9; ++id) {
      if (c.is_blue(id)) continue;
      const auto f = flip_site(c, reg->site(id));
      CHECK(f.blue_count() == c.blue_count() + 1);
      CHECK(eval_event(f.view(), ev, ws));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("config dump format") {
  const auto reg = make_region(RegionSpec::parallelogram(2, 1));
  std::ostringstream os;
  write_config_dump(os, config_from_mask(reg, 0b01));
  CHECK(os.str() == "0 0 blue\n1 0 yellow\n");
}
