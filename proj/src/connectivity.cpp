#include "perc/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "perc/union_find.hpp"

namespace perc {

ClusterLabels label_clusters(const ColorView& colors, Color color) {
  const Region& region = colors.region();
  const auto n = static_cast<SiteId>(region.size());
  UnionFind uf(region.size());
  for (SiteId v = 0; v < n; ++v) {
    if (!colors.has(v, color)) continue;
    for (SiteId w : region.neighbor_ids(v))
      if (w > v && colors.has(w, color)) uf.unite(v, w);
  }
  ClusterLabels out;
  out.color = color;
  out.label.assign(region.size(), kNoSite);
  std::vector<SiteId> canonical(region.size(), kNoSite);
  for (SiteId v = 0; v < n; ++v) {
    if (!colors.has(v, color)) continue;
    auto& c = canonical[static_cast<std::size_t>(uf.find(v))];
    if (c == kNoSite) {
      c = v;  // ids ascend, so the first member seen is the minimum
      ++out.cluster_count;
    }
    out.label[static_cast<std::size_t>(v)] = c;
  }
  return out;
}

std::size_t crossing_cluster_count(const Region& region, const ClusterLabels& labels, ArcLabel a,
                                   ArcLabel b) {
  std::vector<std::uint8_t> touches(region.size(), 0);
  for (SiteId v : region.arc(a)) {
    const SiteId l = labels.label[static_cast<std::size_t>(v)];
    if (l != kNoSite) touches[static_cast<std::size_t>(l)] |= 1;
  }
  std::size_t count = 0;
  for (SiteId v : region.arc(b)) {
    const SiteId l = labels.label[static_cast<std::size_t>(v)];
    if (l != kNoSite && touches[static_cast<std::size_t>(l)] == 1) {
      touches[static_cast<std::size_t>(l)] = 3;
      ++count;
    }
  }
  return count;
}

void Workspace::prepare(std::size_t n) {
  if (seen_in.size() >= n) return;
  seen_in.assign(n, 0);
  seen_out.assign(n, 0);
  flow_stamp.assign(n, 0);
  next.assign(n, kNoSite);
  prev.assign(n, kNoSite);
  parent.assign(2 * n, 0);
  epoch = 0;
}

std::uint32_t Workspace::next_epoch() {
  if (++epoch == 0) {
    std::fill(seen_in.begin(), seen_in.end(), 0);
    std::fill(seen_out.begin(), seen_out.end(), 0);
    std::fill(flow_stamp.begin(), flow_stamp.end(), 0);
    epoch = 1;
  }
  return epoch;
}

namespace {

constexpr SiteId kSource = -2;
constexpr SiteId kSink = -3;

// Residual-graph search on the vertex-split graph. Each coloured site v has
// an in-node (state 2v) and an out-node (state 2v+1). Flow is stored as
// successor/predecessor links per used site.
class FlowSearch {
 public:
  FlowSearch(const ColorView& colors, Color color, ArcLabel from, ArcLabel to, Workspace& ws)
      : colors_(colors), region_(colors.region()), color_(color), from_(region_.arc(from)),
        to_(to), ws_(ws) {
    region_.arc(to);
    ws_.prepare(region_.size());
    flow_epoch_ = ws_.next_epoch();
  }

  int run(int cap) {
    int flow = 0;
    while (flow < cap && augment()) ++flow;
    return flow;
  }

 private:
  void touch(SiteId v) {
    auto& s = ws_.flow_stamp[static_cast<std::size_t>(v)];
    if (s != flow_epoch_) {
      s = flow_epoch_;
      ws_.next[static_cast<std::size_t>(v)] = kNoSite;
      ws_.prev[static_cast<std::size_t>(v)] = kNoSite;
    }
  }
  SiteId next(SiteId v) const {
    return ws_.flow_stamp[static_cast<std::size_t>(v)] == flow_epoch_ ? ws_.next[static_cast<std::size_t>(v)]
                                                                      : kNoSite;
  }
  SiteId prev(SiteId v) const {
    return ws_.flow_stamp[static_cast<std::size_t>(v)] == flow_epoch_ ? ws_.prev[static_cast<std::size_t>(v)]
                                                                      : kNoSite;
  }
  void set_next(SiteId v, SiteId x) {
    touch(v);
    ws_.next[static_cast<std::size_t>(v)] = x;
  }
  void set_prev(SiteId v, SiteId x) {
    touch(v);
    ws_.prev[static_cast<std::size_t>(v)] = x;
  }
  bool used(SiteId v) const { return prev(v) != kNoSite; }

  bool visit(std::int32_t state, std::int32_t parent, std::uint32_t epoch) {
    const auto v = static_cast<std::size_t>(state >> 1);
    auto& seen = (state & 1) ? ws_.seen_out[v] : ws_.seen_in[v];
    if (seen == epoch) return false;
    seen = epoch;
    ws_.parent[static_cast<std::size_t>(state)] = parent;
    ws_.queue.push_back(state);
    return true;
  }

  bool augment() {
    // Epochs from next_epoch() are shared with the flow stamp, which stays
    // valid because stamps only ever compare for equality with flow_epoch_.
    const std::uint32_t epoch = ws_.next_epoch();
    ws_.queue.clear();
    for (SiteId v : from_)
      if (colors_.has(v, color_) && prev(v) != kSource) visit(2 * v, kSource, epoch);

    std::int32_t found = -1;
    for (std::size_t head = 0; head < ws_.queue.size() && found < 0; ++head) {
      const std::int32_t s = ws_.queue[head];
      const SiteId v = s >> 1;
      if ((s & 1) == 0) {
        if (!used(v)) {
          visit(s + 1, s, epoch);
        } else if (const SiteId u = prev(v); u >= 0) {
          visit(2 * u + 1, s, epoch);
        }
        continue;
      }
      if (used(v)) visit(2 * v, s, epoch);
      if (region_.in_arc(v, to_) && next(v) != kSink) {
        found = s;
        break;
      }
      const SiteId nv = next(v);
      for (SiteId w : region_.neighbor_ids(v))
        if (w >= 0 && w != nv && colors_.has(w, color_)) visit(2 * w, s, epoch);
    }
    if (found < 0) return false;

    path_.clear();
    for (std::int32_t s = found; s != kSource; s = ws_.parent[static_cast<std::size_t>(s)])
      path_.push_back(s);
    // path_ runs sink-side first; apply edges in source-to-sink order.
    set_prev(path_.back() >> 1, kSource);
    for (std::size_t i = path_.size() - 1; i > 0; --i) {
      const std::int32_t a = path_[i], b = path_[i - 1];
      const SiteId va = a >> 1, vb = b >> 1;
      if (va == vb) continue;  // internal edge, forward or cancelled
      if ((a & 1) == 1) {      // out(va) -> in(vb): new flow
        set_next(va, vb);
        set_prev(vb, va);
      } else {  // in(va) -> out(vb): cancels flow vb -> va
        if (next(vb) == va) set_next(vb, kNoSite);
        if (prev(va) == vb) set_prev(va, kNoSite);
      }
    }
    set_next(found >> 1, kSink);
    return true;
  }

  const ColorView& colors_;
  const Region& region_;
  Color color_;
  std::span<const SiteId> from_;
  ArcLabel to_;
  Workspace& ws_;
  std::uint32_t flow_epoch_ = 0;
  std::vector<std::int32_t> path_;
};

}  // namespace

int max_disjoint_crossings(const ColorView& colors, Color color, ArcLabel from, ArcLabel to, int cap,
                           Workspace& ws) {
  if (cap < 1) throw std::invalid_argument("crossing cap must be at least 1");
  return FlowSearch(colors, color, from, to, ws).run(cap);
}

int max_disjoint_crossings(const Configuration& config, Color color, ArcLabel from, ArcLabel to,
                           int cap) {
  Workspace ws;
  return max_disjoint_crossings(config.view(), color, from, to, cap, ws);
}

std::size_t arc_cluster_count(const ColorView& colors, Color color, ArcLabel from, ArcLabel to,
                              std::size_t limit, Workspace& ws) {
  const Region& region = colors.region();
  const auto seeds = region.arc(from);
  region.arc(to);
  ws.prepare(region.size());
  const std::uint32_t epoch = ws.next_epoch();
  std::size_t count = 0;
  for (SiteId a : seeds) {
    if (ws.seen_in[static_cast<std::size_t>(a)] == epoch || !colors.has(a, color)) continue;
    ws.queue.clear();
    ws.queue.push_back(a);
    ws.seen_in[static_cast<std::size_t>(a)] = epoch;
    bool touches = false;
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
      const SiteId v = ws.queue[head];
      if (!touches && region.in_arc(v, to)) {
        touches = true;
        if (count + 1 >= limit) return count + 1;
      }
      for (SiteId w : region.neighbor_ids(v)) {
        if (w < 0) continue;
        const auto i = static_cast<std::size_t>(w);
        if (ws.seen_in[i] == epoch || ws.seen_out[i] == epoch) continue;
        if (!colors.has(w, color)) {
          ws.seen_out[i] = epoch;
          continue;
        }
        ws.seen_in[i] = epoch;
        ws.queue.push_back(w);
      }
    }
    if (touches) ++count;
  }
  return count;
}

namespace {

class OrderedCrossingSearch {
 public:
  OrderedCrossingSearch(const ColorView& colors, ArcLabel from, ArcLabel to, ArcLabel toward,
                        std::span<const Color> sequence)
      : colors_(colors), region_(colors.region()), sequence_(sequence) {
    require_enumerable(region_);
    const auto n = region_.size();
    from_mask_ = mask_of(region_.arc(from));
    to_mask_ = mask_of(region_.arc(to));
    toward_mask_ = mask_of(region_.arc(toward));
    adjacency_.assign(n, 0);
    for (SiteId v = 0; v < static_cast<SiteId>(n); ++v)
      for (SiteId w : region_.neighbor_ids(v))
        if (w >= 0) adjacency_[static_cast<std::size_t>(v)] |= bit(w);
    for (Color c : {Color::Blue, Color::Yellow}) {
      std::uint32_t m = 0;
      for (SiteId v = 0; v < static_cast<SiteId>(n); ++v)
        if (colors_.has(v, c)) m |= bit(v);
      color_mask_[static_cast<std::size_t>(c)] = m;
    }
  }

  bool run() {
    const std::uint32_t all = region_.size() == 32 ? ~0u : (1u << region_.size()) - 1u;
    return search(all, 0);
  }

 private:
  static std::uint32_t bit(SiteId v) { return 1u << static_cast<unsigned>(v); }
  static std::uint32_t mask_of(std::span<const SiteId> ids) {
    std::uint32_t m = 0;
    for (SiteId v : ids) m |= bit(v);
    return m;
  }

  // Sites of `avail` connected to the toward arc inside `avail`.
  std::uint32_t flood(std::uint32_t avail) const {
    std::uint32_t reached = avail & toward_mask_;
    std::uint32_t frontier = reached;
    while (frontier) {
      std::uint32_t grow = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1)
        grow |= adjacency_[static_cast<std::size_t>(std::countr_zero(f))];
      grow &= avail & ~reached;
      reached |= grow;
      frontier = grow;
    }
    return reached;
  }

  bool search(std::uint32_t avail, std::size_t depth) {
    if (depth == sequence_.size()) return true;
    const std::uint64_t key = (static_cast<std::uint64_t>(avail) << 8) | depth;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint32_t usable = avail & color_mask_[static_cast<std::size_t>(sequence_[depth])];
    bool ok = false;
    for (std::uint32_t s = usable & from_mask_; s && !ok; s &= s - 1) {
      const auto v = static_cast<SiteId>(std::countr_zero(s));
      ok = extend(v, bit(v), usable, avail, depth);
    }
    memo_.emplace(key, ok);
    return ok;
  }

  // Depth-first over simple paths that start at their only from-arc site and
  // stop at their first to-arc site; sub-crossings suffice since removing
  // sites from a crossing only enlarges what lies beyond it.
  bool extend(SiteId v, std::uint32_t path, std::uint32_t usable, std::uint32_t avail,
              std::size_t depth) {
    if (to_mask_ & bit(v)) return search(flood(avail & ~path), depth + 1);
    std::uint32_t cand = adjacency_[static_cast<std::size_t>(v)] & usable & ~path & ~from_mask_;
    for (; cand; cand &= cand - 1) {
      const auto w = static_cast<SiteId>(std::countr_zero(cand));
      if (extend(w, path | bit(w), usable, avail, depth)) return true;
    }
    return false;
  }

  const ColorView& colors_;
  const Region& region_;
  std::span<const Color> sequence_;
  std::uint32_t from_mask_ = 0, to_mask_ = 0, toward_mask_ = 0;
  std::uint32_t color_mask_[2] = {0, 0};
  std::vector<std::uint32_t> adjacency_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

}  // namespace

bool has_ordered_crossings(const ColorView& colors, ArcLabel from, ArcLabel to, ArcLabel toward,
                           std::span<const Color> sequence) {
  return OrderedCrossingSearch(colors, from, to, toward, sequence).run();
}

ArmEvent ArmEvent::half_plane(double r, double R, int j) {
  return {RegionSpec::semi_annulus(r, R), EventKind::HalfPlane, j};
}
ArmEvent ArmEvent::plane_polychromatic(double r, double R, int j) {
  return {RegionSpec::annulus(r, R), EventKind::PlanePolychromatic, j};
}
ArmEvent ArmEvent::one_arm(double R) { return {RegionSpec::annulus(2.0, R), EventKind::OneArm, 1}; }
ArmEvent ArmEvent::two_clusters(double R) {
  return {RegionSpec::annulus(2.0, R), EventKind::TwoClusters, 2};
}
ArmEvent ArmEvent::k_clusters(const RegionSpec& spec, int k) { return {spec, EventKind::KClusters, k}; }
ArmEvent ArmEvent::parallelogram_crossing(int w, int h, Color color, CrossingDirection direction) {
  return {RegionSpec::parallelogram(w, h), EventKind::ParallelogramCrossing, 1, color, direction};
}
ArmEvent ArmEvent::prescribed_sequence(const RegionSpec& spec, std::vector<Color> colors) {
  ArmEvent e{spec, EventKind::PrescribedSequence, static_cast<int>(colors.size())};
  e.sequence = std::move(colors);
  return e;
}

void ArmEvent::validate() const {
  spec.validate();
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("invalid event " + name() + " on " + spec.to_string() + ": " + why);
  };
  if (j < 1) fail("arm count must be at least 1");
  switch (kind) {
    case EventKind::HalfPlane:
      if (spec.kind != RegionKind::SemiAnnulus) fail("needs a semi-annulus");
      break;
    case EventKind::PlanePolychromatic:
      if (j < 2) fail("polychromatic events need j >= 2");
      [[fallthrough]];
    case EventKind::OneArm:
    case EventKind::TwoClusters:
    case EventKind::KClusters:
      if (!spec.annular()) fail("needs an annular region");
      break;
    case EventKind::ParallelogramCrossing:
      if (spec.kind != RegionKind::Parallelogram) fail("needs a parallelogram");
      break;
    case EventKind::PrescribedSequence:
      if (spec.kind != RegionKind::Parallelogram && spec.kind != RegionKind::SemiAnnulus)
        fail("needs a parallelogram or semi-annulus");
      if (sequence.empty() || sequence.size() != static_cast<std::size_t>(j))
        fail("colour sequence length must equal j");
      break;
  }
}

ArmEvent ArmEvent::dual() const {
  ArmEvent d = *this;
  d.color = swap(color);
  for (auto& c : d.sequence) c = swap(c);
  return d;
}

std::string ArmEvent::name() const {
  const std::string suffix = color == Color::Blue ? "" : "_yellow";
  switch (kind) {
    case EventKind::HalfPlane: return "G" + std::to_string(j) + suffix;
    case EventKind::PlanePolychromatic: return "H" + std::to_string(j);
    case EventKind::OneArm: return "A1" + suffix;
    case EventKind::TwoClusters: return "A2" + suffix;
    case EventKind::KClusters: return "K" + std::to_string(j) + suffix;
    case EventKind::ParallelogramCrossing:
      return std::string(direction == CrossingDirection::LeftRight ? "LR" : "TB") +
             (color == Color::Blue ? "_blue" : "_yellow");
    case EventKind::PrescribedSequence: {
      std::string s = "SEQ_";
      for (Color c : sequence) s += c == Color::Blue ? 'B' : 'Y';
      return s;
    }
  }
  return "?";
}

bool eval_event(const ColorView& colors, const ArmEvent& event, Workspace& ws) {
  if (!(colors.region().spec() == event.spec))
    throw std::invalid_argument("configuration region " + colors.region().spec().to_string() +
                                " does not match event region " + event.spec.to_string());
  switch (event.kind) {
    case EventKind::HalfPlane:
      if (event.j == 1)
        return arc_cluster_count(colors, event.color, ArcLabel::Inner, ArcLabel::Outer, 1, ws) >= 1;
      return max_disjoint_crossings(colors, event.color, ArcLabel::Inner, ArcLabel::Outer, event.j,
                                    ws) == event.j;
    case EventKind::PlanePolychromatic: {
      // Crossings of different colours are automatically disjoint.
      const int j = event.j;
      if (arc_cluster_count(colors, Color::Blue, ArcLabel::Inner, ArcLabel::Outer, 1, ws) == 0 ||
          arc_cluster_count(colors, Color::Yellow, ArcLabel::Inner, ArcLabel::Outer, 1, ws) == 0)
        return false;
      if (j == 2) return true;
      const int blue = max_disjoint_crossings(colors, Color::Blue, ArcLabel::Inner, ArcLabel::Outer,
                                              j - 1, ws);
      if (blue == 0) return false;
      const int yellow = max_disjoint_crossings(colors, Color::Yellow, ArcLabel::Inner,
                                                ArcLabel::Outer, j - blue, ws);
      return yellow >= 1 && blue + yellow >= j;
    }
    case EventKind::OneArm:
      return arc_cluster_count(colors, event.color, ArcLabel::Inner, ArcLabel::Outer, 1, ws) >= 1;
    case EventKind::TwoClusters:
      return arc_cluster_count(colors, event.color, ArcLabel::Inner, ArcLabel::Outer, 2, ws) >= 2;
    case EventKind::KClusters: {
      const auto k = static_cast<std::size_t>(event.j);
      return arc_cluster_count(colors, event.color, ArcLabel::Inner, ArcLabel::Outer, k, ws) >= k;
    }
    case EventKind::ParallelogramCrossing: {
      const bool lr = event.direction == CrossingDirection::LeftRight;
      return arc_cluster_count(colors, event.color, lr ? ArcLabel::Left : ArcLabel::Bottom,
                               lr ? ArcLabel::Right : ArcLabel::Top, 1, ws) >= 1;
    }
    case EventKind::PrescribedSequence: {
      if (event.spec.kind == RegionKind::Parallelogram)
        return has_ordered_crossings(colors, ArcLabel::Left, ArcLabel::Right, ArcLabel::Top,
                                     event.sequence);
      return has_ordered_crossings(colors, ArcLabel::Inner, ArcLabel::Outer, ArcLabel::Left,
                                   event.sequence);
    }
  }
  return false;
}

bool eval_event(const Configuration& config, const ArmEvent& event) {
  Workspace ws;
  return eval_event(config.view(), event, ws);
}

std::pair<bool, bool> parallelogram_duality(const Configuration& config) {
  if (config.region().spec().kind != RegionKind::Parallelogram)
    throw std::invalid_argument("duality check needs a parallelogram, got " +
                                config.region().spec().to_string());
  Workspace ws;
  const auto view = config.view();
  return {arc_cluster_count(view, Color::Blue, ArcLabel::Left, ArcLabel::Right, 1, ws) >= 1,
          arc_cluster_count(view, Color::Yellow, ArcLabel::Bottom, ArcLabel::Top, 1, ws) >= 1};
}

}  // namespace perc
