#ifndef PERC_CONNECTIVITY_HPP
#define PERC_CONNECTIVITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "perc/config.hpp"
#include "perc/lattice.hpp"

namespace perc {

/// Cluster labels of one colour. label[i] is the smallest site id in the
/// cluster of site i, or kNoSite when site i has the other colour.
struct ClusterLabels {
  Color color = Color::Blue;
  std::vector<SiteId> label;
  std::size_t cluster_count = 0;
};

ClusterLabels label_clusters(const ColorView& colors, Color color);
inline ClusterLabels label_clusters(const Configuration& config, Color color) {
  return label_clusters(config.view(), color);
}

/// Number of distinct clusters with a site in both arcs.
std::size_t crossing_cluster_count(const Region& region, const ClusterLabels& labels, ArcLabel a,
                                   ArcLabel b);

/// Reusable scratch memory for the search routines below. One per worker;
/// buffers grow to the largest region seen and are reset by epoch counters.
struct Workspace {
  void prepare(std::size_t n);
  std::uint32_t next_epoch();

  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> seen_in, seen_out, flow_stamp;
  std::vector<SiteId> next, prev;
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> queue;
};

/// min(cap, maximum number of vertex-disjoint paths of `color` from arc `from`
/// to arc `to`), by unit-capacity augmenting paths on the vertex-split graph.
int max_disjoint_crossings(const ColorView& colors, Color color, ArcLabel from, ArcLabel to, int cap,
                           Workspace& ws);
int max_disjoint_crossings(const Configuration& config, Color color, ArcLabel from, ArcLabel to,
                           int cap);

/// Number of clusters of `color` touching both arcs, found by searching only
/// from the `from` arc. Stops once `limit` such clusters are found.
std::size_t arc_cluster_count(const ColorView& colors, Color color, ArcLabel from, ArcLabel to,
                              std::size_t limit, Workspace& ws);

/// Whether there are disjoint crossings from `from` to `to` with the given
/// colours, listed in order of increasing distance from the arc opposite to
/// `toward`: each crossing lies in the part of the region that the previous
/// ones leave connected to `toward`. Exhaustive; small regions only.
bool has_ordered_crossings(const ColorView& colors, ArcLabel from, ArcLabel to, ArcLabel toward,
                           std::span<const Color> sequence);

enum class EventKind {
  HalfPlane,            // G_j: j disjoint crossings of a semi-annulus
  PlanePolychromatic,   // H_j: j disjoint crossings of an annulus, not all one colour
  OneArm,               // one crossing cluster of the annulus
  TwoClusters,          // two disjoint crossing clusters of the annulus
  KClusters,            // k disjoint crossing clusters
  ParallelogramCrossing,
  PrescribedSequence,   // ordered crossings with given colours (small regions only)
};

enum class CrossingDirection { LeftRight, TopBottom };

/// Declarative arm event. `color` is the arm colour for the monochromatic
/// kinds (blue in the standard events); `j` is the arm or cluster count.
struct ArmEvent {
  RegionSpec spec;
  EventKind kind = EventKind::OneArm;
  int j = 1;
  Color color = Color::Blue;
  CrossingDirection direction = CrossingDirection::LeftRight;
  std::vector<Color> sequence;

  static ArmEvent half_plane(double r, double R, int j);
  static ArmEvent plane_polychromatic(double r, double R, int j);
  /// Vicinity of the origin is the inner arc of Annulus(2, R).
  static ArmEvent one_arm(double R);
  static ArmEvent two_clusters(double R);
  static ArmEvent k_clusters(const RegionSpec& spec, int k);
  static ArmEvent parallelogram_crossing(int w, int h, Color color, CrossingDirection direction);
  static ArmEvent prescribed_sequence(const RegionSpec& spec, std::vector<Color> colors);

  void validate() const;
  /// The event with every colour swapped.
  ArmEvent dual() const;
  /// Short name used in CSV output (G_j, H_j, A1, A2, ...).
  std::string name() const;

  friend bool operator==(const ArmEvent&, const ArmEvent&) = default;
};

bool eval_event(const ColorView& colors, const ArmEvent& event, Workspace& ws);
bool eval_event(const Configuration& config, const ArmEvent& event);

/// (blue left-right crossing, yellow top-bottom crossing) of a parallelogram.
std::pair<bool, bool> parallelogram_duality(const Configuration& config);

}  // namespace perc

#endif  // PERC_CONNECTIVITY_HPP
