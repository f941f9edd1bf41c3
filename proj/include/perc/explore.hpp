#ifndef PERC_EXPLORE_HPP
#define PERC_EXPLORE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "perc/config.hpp"
#include "perc/lattice.hpp"

namespace perc {

// Exploration processes walk along edges of the honeycomb lattice, i.e. the
// boundaries between pairs of adjacent hexagonal cells. The walk keeps blue
// cells on its left and yellow cells on its right: it probes the cell ahead
// of its current edge, turns right if that cell is blue and left if it is
// yellow. Cells outside the domain get virtual colours from the boundary
// rule of each process; the configuration itself is never modified.

/// Edge separating two adjacent cells, oriented with `left` on the walker's left.
struct DirectedEdge {
  SiteCoord left;
  SiteCoord right;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// The third cell at the vertex the edge points to.
SiteCoord ahead(const DirectedEdge& e);
/// That vertex, as the centroid of the three cells around it.
Point tip(const DirectedEdge& e);

enum class Turn : std::int8_t { Left = 1, Right = -1 };

struct ExplorationStep {
  DirectedEdge edge;  // edge after the step
  Turn turn;
  Color probed;
};

enum class WindingVerdict { Clockwise, Anticlockwise, None };

enum class ExplorationStatus {
  ReachedTarget,   // chordal walk arrived at its target vertex
  HitInnerCircle,  // annulus walk touched the inner circle (time rho)
  Disconnected,    // annulus walk separated the inner from the outer circle (time T)
  HitInterval,     // semi-annulus walk reached the interval [-R, -r]
};

struct ExplorationPath {
  DirectedEdge start;
  std::vector<ExplorationStep> steps;
  ExplorationStatus status = ExplorationStatus::ReachedTarget;
  WindingVerdict winding = WindingVerdict::None;
  long rho = -1;  // step index of the first inner-circle touch, if any
  long disconnection = -1;
  int crossings = 0;
  int turn_sum = 0;  // net turning in units of 60 degrees, left positive

  std::vector<DirectedEdge> edges() const;
};

/// Chordal exploration in a simply connected region (the configuration's
/// region) between the boundary vertices nearest to `a` and `b`. Exterior
/// cells counterclockwise from a to b are yellow, the rest blue. Throws
/// std::invalid_argument if the region is not simply connected.
ExplorationPath chordal_exploration(const Configuration& config, Point a, Point b);

/// Crossings between the inner and outer semicircles made by the chordal
/// walk from the point r to the point -R before it reaches [-R, -r]. The
/// first crossing counted is blue, then they alternate.
int semi_annulus_crossing_count(const ColorView& colors);
int semi_annulus_crossing_count(const Configuration& config);
ExplorationPath semi_annulus_exploration(const Configuration& config);

/// Exploration in an annulus started on the outer circle at the boundary
/// vertex nearest angle `start_angle`. Inner-circle cells are yellow; an
/// outer-circle cell is blue if its continuously tracked argument is below
/// the starting argument and yellow otherwise. Stops at the first inner
/// touch or at the disconnection time, whichever comes first.
ExplorationPath annulus_exploration(const Configuration& config, double start_angle = 0.0);

/// Whether the annulus exploration makes j-1 crossings between the two
/// circles before its disconnection time (j >= 2).
bool ep_crossing_event(const ColorView& colors, int j);
bool ep_crossing_event(const Configuration& config, int j);
/// The walk behind ep_crossing_event, recorded.
ExplorationPath ep_exploration(const Configuration& config, int j);

/// Nested-exploration one-arm detector: explore; an inner touch means a blue
/// crossing, a clockwise disconnection means a yellow circuit (no crossing),
/// an anticlockwise one means a blue circuit joined to the outer circle, and
/// the search restarts inside that circuit.
bool one_arm_nested(const ColorView& colors);
bool one_arm_nested(const Configuration& config);

/// One line per step: "left_q left_r right_q right_r turn probed".
void write_path_dump(std::ostream& os, const ExplorationPath& path);

}  // namespace perc

#endif  // PERC_EXPLORE_HPP
