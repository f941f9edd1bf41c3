#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "perc/lattice.hpp"

using namespace perc;

namespace {

double dist(SiteCoord a, SiteCoord b) {
  const Point pa = position(a), pb = position(b);
  return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

bool contains(const std::vector<SiteCoord>& v, SiteCoord s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("neighbors of the origin in counterclockwise order") {
  const auto n = neighbors({0, 0});
  const std::array<SiteCoord, 6> want{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
  CHECK(n == want);
  for (int k = 0; k < 6; ++k) {
    const double a0 = argument(n[k]), a1 = argument(n[(k + 1) % 6]);
    double d = a1 - a0;
    if (d < 0) d += 2 * M_PI;
    CHECK(d == doctest::Approx(M_PI / 3));
  }
}

TEST_CASE("neighbors lie at unit distance") {
  for (SiteCoord t : neighbors({5, -2})) CHECK(dist({5, -2}, t) == doctest::Approx(1.0));
}

TEST_CASE("neighbor relation is symmetric") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> u(-1000, 1000);
  for (int i = 0; i < 100; ++i) {
    const SiteCoord s{u(gen), u(gen)};
    for (SiteCoord t : neighbors(s)) {
      const auto back = neighbors(t);
      CHECK(std::find(back.begin(), back.end(), s) != back.end());
    }
  }
}

TEST_CASE("direction index") {
  for (int k = 0; k < 6; ++k) CHECK(direction_index(kDirections[k]) == k);
  CHECK(direction_index({1, 1}) == -1);
  CHECK(direction_index({0, 0}) == -1);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(build_region(RegionSpec::annulus(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(build_region(RegionSpec::annulus(0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(build_region(RegionSpec::semi_annulus(4, 2)), std::invalid_argument);
  CHECK_THROWS_AS(build_region(RegionSpec::disc(0)), std::invalid_argument);
  CHECK_THROWS_AS(build_region(RegionSpec::parallelogram(0, 2)), std::invalid_argument);
}

TEST_CASE("Annulus(1,3) inner boundary") {
  const Region reg = build_region(RegionSpec::annulus(1, 3));
  CHECK_FALSE(reg.contains({0, 0}));
  CHECK(reg.contains({1, 0}));
  CHECK(contains(reg.arc_sites(ArcLabel::Inner), {1, 0}));
}

TEST_CASE("Parallelogram(3,2) sites and arcs") {
  const Region reg = build_region(RegionSpec::parallelogram(3, 2));
  CHECK(reg.size() == 6);
  for (int q = 0; q < 3; ++q)
    for (int r = 0; r < 2; ++r) CHECK(reg.contains({q, r}));
  CHECK(reg.arc_sites(ArcLabel::Left) == std::vector<SiteCoord>{{0, 0}, {0, 1}});
  CHECK(reg.arc_sites(ArcLabel::Top) == std::vector<SiteCoord>{{0, 1}, {1, 1}, {2, 1}});
  CHECK_THROWS_AS(reg.arc(ArcLabel::Inner), std::invalid_argument);
}

TEST_CASE("Annulus(4,16) matches an independent site scan") {
  const Region reg = build_region(RegionSpec::annulus(4, 16));
  const double c = 1.0 / std::sqrt(3.0);
  std::size_t count = 0;
  for (int q = -40; q <= 40; ++q)
    for (int r = -40; r <= 40; ++r) {
      const double x = q + 0.5 * r, y = std::sqrt(3.0) / 2 * r;
      const double d = std::sqrt(x * x + y * y);
      const bool in = d >= 4 - c && d < 16 - c;
      count += in;
      CHECK(reg.contains({q, r}) == in);
    }
  CHECK(reg.size() == count);
}

TEST_CASE("Annulus arcs are nonempty and disjoint") {
  for (auto [r, R] : {std::pair{2.0, 4.0}, {2.0, 16.0}, {4.0, 64.0}}) {
    const Region reg = build_region(RegionSpec::annulus(r, R));
    CHECK_FALSE(reg.arc(ArcLabel::Inner).empty());
    CHECK_FALSE(reg.arc(ArcLabel::Outer).empty());
    for (SiteId id : reg.arc(ArcLabel::Inner)) CHECK_FALSE(reg.in_arc(id, ArcLabel::Outer));
    CHECK_THROWS_AS(reg.arc(ArcLabel::Top), std::invalid_argument);
    for (SiteCoord s : reg.sites()) {
      CHECK(radius(s) >= r - kCellCircumradius - 1e-9);
      CHECK(radius(s) < R + kCellCircumradius);
    }
  }
}

TEST_CASE("SemiAnnulus arcs") {
  const Region reg = build_region(RegionSpec::semi_annulus(2, 8));
  for (SiteCoord s : reg.sites()) CHECK(position(s).y > 0);
  const auto left = reg.arc_sites(ArcLabel::Left), right = reg.arc_sites(ArcLabel::Right);
  CHECK_FALSE(left.empty());
  CHECK_FALSE(right.empty());
  for (SiteCoord s : left) {
    CHECK_FALSE(contains(right, s));
    CHECK(position(s).x < 0);
    CHECK(position(s).y <= 1.0);
  }
  for (SiteCoord s : right) CHECK(position(s).x > 0);
}

TEST_CASE("region ids are dense, lexicographic and deterministic") {
  const Region a = build_region(RegionSpec::annulus(2, 10));
  const Region b = build_region(RegionSpec::annulus(2, 10));
  REQUIRE(a.size() == b.size());
  for (SiteId id = 0; id < static_cast<SiteId>(a.size()); ++id) {
    CHECK(a.id_of(a.site(id)) == id);
    CHECK(a.site(id) == b.site(id));
    if (id > 0) CHECK(a.site(id - 1) < a.site(id));
  }
}

TEST_CASE("in-region neighbour ids are symmetric") {
  const Region reg = build_region(RegionSpec::disc(12));
  for (SiteId id = 0; id < static_cast<SiteId>(reg.size()); ++id) {
    const auto nb = reg.neighbor_ids(id);
    for (int k = 0; k < 6; ++k) {
      if (nb[k] == kNoSite) {
        CHECK_FALSE(reg.contains(reg.site(id) + kDirections[k]));
        continue;
      }
      CHECK(reg.neighbor_ids(nb[k])[(k + 3) % 6] == id);
    }
  }
}
