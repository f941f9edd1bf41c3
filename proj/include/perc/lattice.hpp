#ifndef PERC_LATTICE_HPP
#define PERC_LATTICE_HPP

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perc {

/// Axial coordinate of a triangular-lattice site (equivalently, of a hexagon
/// of the honeycomb lattice). The embedding is q*(1,0) + r*(1/2, sqrt(3)/2),
/// so nearest neighbours are at distance 1.
struct SiteCoord {
  int q = 0;
  int r = 0;

  friend auto operator<=>(const SiteCoord&, const SiteCoord&) = default;
  friend SiteCoord operator+(SiteCoord a, SiteCoord b) { return {a.q + b.q, a.r + b.r}; }
  friend SiteCoord operator-(SiteCoord a, SiteCoord b) { return {a.q - b.q, a.r - b.r}; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kSqrt3 = 1.7320508075688772935;
/// Circumradius of a hexagonal cell at mesh 1.
inline constexpr double kCellCircumradius = 1.0 / kSqrt3;

/// The six axial offsets in counterclockwise order starting from +x.
inline constexpr std::array<SiteCoord, 6> kDirections{
    {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

inline Point position(SiteCoord s) {
  return {s.q + 0.5 * s.r, 0.5 * kSqrt3 * s.r};
}

inline double radius(SiteCoord s) {
  const Point p = position(s);
  return std::hypot(p.x, p.y);
}

inline double argument(SiteCoord s) {
  const Point p = position(s);
  return std::atan2(p.y, p.x);
}

/// Index k with kDirections[k] == d, or -1 if d is not a unit offset.
int direction_index(SiteCoord d);

std::array<SiteCoord, 6> neighbors(SiteCoord s);

enum class RegionKind { Disc, Annulus, SemiAnnulus, Parallelogram };

struct RegionSpec {
  RegionKind kind = RegionKind::Disc;
  double inner = 0.0;  // r, annular kinds only
  double outer = 0.0;  // R, disc and annular kinds
  int width = 0;       // parallelogram only
  int height = 0;

  static RegionSpec disc(double R) { return {RegionKind::Disc, 0.0, R, 0, 0}; }
  static RegionSpec annulus(double r, double R) { return {RegionKind::Annulus, r, R, 0, 0}; }
  static RegionSpec semi_annulus(double r, double R) {
    return {RegionKind::SemiAnnulus, r, R, 0, 0};
  }
  static RegionSpec parallelogram(int w, int h) {
    return {RegionKind::Parallelogram, 0.0, 0.0, w, h};
  }

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  bool annular() const {
    return kind == RegionKind::Annulus || kind == RegionKind::SemiAnnulus;
  }
  std::string to_string() const;

  friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

enum class ArcLabel : std::uint8_t { Inner, Outer, Left, Right, Top, Bottom };
inline constexpr std::array<ArcLabel, 6> kAllArcs{ArcLabel::Inner, ArcLabel::Outer,
                                                  ArcLabel::Left,  ArcLabel::Right,
                                                  ArcLabel::Top,   ArcLabel::Bottom};
const char* to_string(ArcLabel label);

using SiteId = std::int32_t;
inline constexpr SiteId kNoSite = -1;

/// A finite set of sites with a dense index and labelled boundary arcs.
/// Immutable after construction.
class Region {
 public:
  explicit Region(const RegionSpec& spec);

  const RegionSpec& spec() const { return spec_; }
  std::size_t size() const { return sites_.size(); }
  std::span<const SiteCoord> sites() const { return sites_; }
  SiteCoord site(SiteId id) const { return sites_[static_cast<std::size_t>(id)]; }

  /// Dense id of s, or kNoSite if s is not in the region.
  SiteId id_of(SiteCoord s) const {
    const int dq = s.q - q_min_;
    const int dr = s.r - r_min_;
    if (dq < 0 || dr < 0 || dq >= q_span_ || dr >= r_span_) return kNoSite;
    return lookup_[static_cast<std::size_t>(dr) * static_cast<std::size_t>(q_span_) +
                   static_cast<std::size_t>(dq)];
  }
  bool contains(SiteCoord s) const { return id_of(s) != kNoSite; }

  /// Neighbour ids in kDirections order; kNoSite where the neighbour is outside.
  std::span<const SiteId, 6> neighbor_ids(SiteId id) const {
    return std::span<const SiteId, 6>(neighbors_.data() + 6 * static_cast<std::size_t>(id), 6);
  }

  bool has_arc(ArcLabel label) const;
  /// Throws std::invalid_argument if the arc is not defined for this kind.
  std::span<const SiteId> arc(ArcLabel label) const;
  bool in_arc(SiteId id, ArcLabel label) const {
    return (arc_flags_[static_cast<std::size_t>(id)] >> static_cast<unsigned>(label)) & 1u;
  }
  /// The stored arc as coordinates (same validation as arc()).
  std::vector<SiteCoord> arc_sites(ArcLabel label) const;

 private:
  RegionSpec spec_;
  std::vector<SiteCoord> sites_;
  std::vector<SiteId> neighbors_;
  std::array<std::vector<SiteId>, 6> arcs_;
  std::vector<std::uint8_t> arc_flags_;
  std::vector<SiteId> lookup_;
  int q_min_ = 0, r_min_ = 0, q_span_ = 0, r_span_ = 0;
};

Region build_region(const RegionSpec& spec);

}  // namespace perc

#endif  // PERC_LATTICE_HPP
