#include "perc/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace perc {

int direction_index(SiteCoord d) {
  for (int k = 0; k < 6; ++k)
    if (kDirections[static_cast<std::size_t>(k)] == d) return k;
  return -1;
}

std::array<SiteCoord, 6> neighbors(SiteCoord s) {
  std::array<SiteCoord, 6> out;
  for (std::size_t k = 0; k < 6; ++k) out[k] = s + kDirections[k];
  return out;
}

void RegionSpec::validate() const {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("invalid region " + to_string() + ": " + why);
  };
  switch (kind) {
    case RegionKind::Disc:
      if (!(outer > 0.0)) fail("radius must be positive");
      break;
    case RegionKind::Annulus:
    case RegionKind::SemiAnnulus:
      if (!(inner > 0.0)) fail("inner radius must be positive");
      if (!(inner < outer)) fail("inner radius must be smaller than outer radius");
      break;
    case RegionKind::Parallelogram:
      if (width < 1 || height < 1) fail("width and height must be at least 1");
      break;
  }
}

std::string RegionSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case RegionKind::Disc: os << "Disc(" << outer << ")"; break;
    case RegionKind::Annulus: os << "Annulus(" << inner << "," << outer << ")"; break;
    case RegionKind::SemiAnnulus: os << "SemiAnnulus(" << inner << "," << outer << ")"; break;
    case RegionKind::Parallelogram: os << "Parallelogram(" << width << "," << height << ")"; break;
  }
  return os.str();
}

const char* to_string(ArcLabel label) {
  switch (label) {
    case ArcLabel::Inner: return "inner";
    case ArcLabel::Outer: return "outer";
    case ArcLabel::Left: return "left";
    case ArcLabel::Right: return "right";
    case ArcLabel::Top: return "top";
    case ArcLabel::Bottom: return "bottom";
  }
  return "?";
}

namespace {

constexpr double c = kCellCircumradius;

bool meets_circle(SiteCoord s, double rho) {
  const double d = radius(s);
  return d >= rho - c && d <= rho + c;
}

bool member(const RegionSpec& spec, SiteCoord s) {
  switch (spec.kind) {
    case RegionKind::Disc: return radius(s) < spec.outer - c;
    case RegionKind::Annulus: {
      const double d = radius(s);
      return d >= spec.inner - c && d < spec.outer - c;
    }
    case RegionKind::SemiAnnulus: {
      const double d = radius(s);
      return s.r >= 1 && d >= spec.inner - c && d < spec.outer - c;
    }
    case RegionKind::Parallelogram:
      return s.q >= 0 && s.q < spec.width && s.r >= 0 && s.r < spec.height;
  }
  return false;
}

unsigned arc_bit(ArcLabel label) { return 1u << static_cast<unsigned>(label); }

}  // namespace

Region::Region(const RegionSpec& spec) : spec_(spec) {
  spec_.validate();

  int lo_q, hi_q, lo_r, hi_r;
  if (spec_.kind == RegionKind::Parallelogram) {
    lo_q = 0, hi_q = spec_.width - 1, lo_r = 0, hi_r = spec_.height - 1;
  } else {
    const int b = static_cast<int>(std::ceil(2.0 * (spec_.outer + 2.0)));
    lo_q = lo_r = -b;
    hi_q = hi_r = b;
  }
  // Lexicographic in (q, r).
  for (int q = lo_q; q <= hi_q; ++q)
    for (int r = lo_r; r <= hi_r; ++r)
      if (member(spec_, {q, r})) sites_.push_back({q, r});

  if (sites_.empty()) {
    q_min_ = r_min_ = 0;
    q_span_ = r_span_ = 0;
  } else {
    int qmn = sites_.front().q, qmx = sites_.back().q;
    int rmn = sites_.front().r, rmx = rmn;
    for (const auto& s : sites_) rmn = std::min(rmn, s.r), rmx = std::max(rmx, s.r);
    q_min_ = qmn - 2;
    r_min_ = rmn - 2;
    q_span_ = qmx - qmn + 5;
    r_span_ = rmx - rmn + 5;
  }
  lookup_.assign(static_cast<std::size_t>(q_span_) * static_cast<std::size_t>(r_span_), kNoSite);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const auto& s = sites_[i];
    lookup_[static_cast<std::size_t>(s.r - r_min_) * static_cast<std::size_t>(q_span_) +
            static_cast<std::size_t>(s.q - q_min_)] = static_cast<SiteId>(i);
  }

  neighbors_.resize(6 * sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i)
    for (std::size_t k = 0; k < 6; ++k) neighbors_[6 * i + k] = id_of(sites_[i] + kDirections[k]);

  arc_flags_.assign(sites_.size(), 0);
  auto add = [&](std::size_t i, ArcLabel label) {
    arcs_[static_cast<std::size_t>(label)].push_back(static_cast<SiteId>(i));
    arc_flags_[i] |= static_cast<std::uint8_t>(arc_bit(label));
  };
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const SiteCoord s = sites_[i];
    switch (spec_.kind) {
      case RegionKind::Parallelogram:
        if (s.q == 0) add(i, ArcLabel::Left);
        if (s.q == spec_.width - 1) add(i, ArcLabel::Right);
        if (s.r == 0) add(i, ArcLabel::Bottom);
        if (s.r == spec_.height - 1) add(i, ArcLabel::Top);
        break;
      case RegionKind::Annulus:
      case RegionKind::SemiAnnulus:
        if (meets_circle(s, spec_.inner)) add(i, ArcLabel::Inner);
        if (spec_.kind == RegionKind::SemiAnnulus && s.r == 1)
          add(i, position(s).x < 0.0 ? ArcLabel::Left : ArcLabel::Right);
        [[fallthrough]];
      case RegionKind::Disc: {
        for (const auto& n : neighbors(s)) {
          if (!contains(n) && meets_circle(n, spec_.outer)) {
            add(i, ArcLabel::Outer);
            break;
          }
        }
        break;
      }
    }
  }
}

bool Region::has_arc(ArcLabel label) const {
  switch (spec_.kind) {
    case RegionKind::Disc: return label == ArcLabel::Outer;
    case RegionKind::Annulus: return label == ArcLabel::Inner || label == ArcLabel::Outer;
    case RegionKind::SemiAnnulus:
      return label == ArcLabel::Inner || label == ArcLabel::Outer || label == ArcLabel::Left ||
             label == ArcLabel::Right;
    case RegionKind::Parallelogram:
      return label == ArcLabel::Left || label == ArcLabel::Right || label == ArcLabel::Top ||
             label == ArcLabel::Bottom;
  }
  return false;
}

std::span<const SiteId> Region::arc(ArcLabel label) const {
  if (!has_arc(label))
    throw std::invalid_argument(std::string("arc '") + perc::to_string(label) +
                                "' is not defined for " + spec_.to_string());
  return arcs_[static_cast<std::size_t>(label)];
}

std::vector<SiteCoord> Region::arc_sites(ArcLabel label) const {
  std::vector<SiteCoord> out;
  for (SiteId id : arc(label)) out.push_back(site(id));
  return out;
}

Region build_region(const RegionSpec& spec) { return Region(spec); }

}  // namespace perc
