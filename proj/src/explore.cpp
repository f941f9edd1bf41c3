#include "perc/explore.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "perc/rng.hpp"

namespace perc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  while (a > kPi) a -= kTwoPi;
  while (a <= -kPi) a += kTwoPi;
  return a;
}

double angle_of(Point p) { return std::atan2(p.y, p.x); }

struct CoordHash {
  std::size_t operator()(SiteCoord s) const {
    return static_cast<std::size_t>(
        splitmix64((static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.q)) << 32) |
                   static_cast<std::uint32_t>(s.r)));
  }
};

DirectedEdge advance(const DirectedEdge& e, SiteCoord probe, Color c) {
  return c == Color::Blue ? DirectedEdge{probe, e.right} : DirectedEdge{e.left, probe};
}

Turn turn_for(Color c) { return c == Color::Blue ? Turn::Right : Turn::Left; }

// A honeycomb vertex is a triangle of three mutually adjacent cells: either
// {a, a+(1,0), a+(0,1)} or {a+(1,0), a+(0,1), a+(1,1)}.
std::uint64_t vertex_key(const DirectedEdge& e) {
  const SiteCoord x = ahead(e);
  const int mq = std::min({e.left.q, e.right.q, x.q});
  const int mr = std::min({e.left.r, e.right.r, x.r});
  const int sum = e.left.q + e.left.r + e.right.q + e.right.r + x.q + x.r;
  const std::uint64_t up = sum == 3 * (mq + mr) + 2 ? 1 : 0;
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(mq)) << 33) ^
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(mr)) << 1) ^ up;
}

// ---------------------------------------------------------------------------
// Chordal exploration

bool simply_connected(const Region& region) {
  const std::size_t n = region.size();
  if (n == 0) return false;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<SiteId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const SiteId v = stack.back();
    stack.pop_back();
    for (SiteId w : region.neighbor_ids(v))
      if (w >= 0 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) return false;

  // The complement inside a one-cell-padded bounding box must be connected.
  int q0 = region.site(0).q, q1 = q0, r0 = region.site(0).r, r1 = r0;
  for (const auto& s : region.sites()) {
    q0 = std::min(q0, s.q), q1 = std::max(q1, s.q);
    r0 = std::min(r0, s.r), r1 = std::max(r1, s.r);
  }
  --q0, --r0, ++q1, ++r1;
  const int wq = q1 - q0 + 1, wr = r1 - r0 + 1;
  auto index = [&](SiteCoord s) {
    return static_cast<std::size_t>(s.r - r0) * static_cast<std::size_t>(wq) +
           static_cast<std::size_t>(s.q - q0);
  };
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(wq) * static_cast<std::size_t>(wr), 0);
  std::size_t outside = mark.size() - n;
  std::vector<SiteCoord> todo{{q0, r0}};
  mark[index({q0, r0})] = 1;
  std::size_t found = 1;
  while (!todo.empty()) {
    const SiteCoord s = todo.back();
    todo.pop_back();
    for (const auto& t : neighbors(s)) {
      if (t.q < q0 || t.q > q1 || t.r < r0 || t.r > r1) continue;
      if (region.contains(t) || mark[index(t)]) continue;
      mark[index(t)] = 1;
      ++found;
      todo.push_back(t);
    }
  }
  return found == outside;
}

struct Junction {
  SiteCoord before;  // exterior cell preceding the vertex in counterclockwise order
  SiteCoord after;
  SiteCoord domain;
  Point vertex;
};

// Outer contour of a simply connected region, counterclockwise, as the
// cyclic sequence of exterior cells met and the vertices where it changes.
struct Contour {
  std::vector<SiteCoord> exterior;
  std::vector<Junction> junctions;  // junction k sits between exterior[k] and exterior[k+1]
};

Contour trace_contour(const Region& region) {
  const SiteCoord s = region.site(0);  // minimal q, so (q-1, r) is outside
  const DirectedEdge e0{s, s + SiteCoord{-1, 0}};
  std::vector<DirectedEdge> edges{e0};
  const std::size_t cap = 12 * region.size() + 16;
  for (DirectedEdge e = e0;;) {
    const SiteCoord x = ahead(e);
    e = region.contains(x) ? DirectedEdge{x, e.right} : DirectedEdge{e.left, x};
    if (e == e0) break;
    edges.push_back(e);
    if (edges.size() > cap) throw std::logic_error("contour trace did not close");
  }
  // Rotate so the sequence starts right after a change of exterior cell.
  const std::size_t m = edges.size();
  std::size_t first = 0;
  while (first < m && edges[first].right == edges[(first + m - 1) % m].right) ++first;
  if (first == m) throw std::logic_error("contour touches a single exterior cell");

  Contour out;
  for (std::size_t i = 0; i < m; ++i) {
    const DirectedEdge& e = edges[(first + i) % m];
    const DirectedEdge& f = edges[(first + i + 1) % m];
    if (i == 0) out.exterior.push_back(e.right);
    if (f.right != e.right) {
      out.junctions.push_back({e.right, f.right, e.left, tip(e)});
      if (i + 1 < m) out.exterior.push_back(f.right);
    }
  }
  return out;
}

struct ChordalSetup {
  DirectedEdge start;
  std::unordered_map<SiteCoord, Color, CoordHash> exterior;
};

ChordalSetup make_chordal_setup(const Region& region, std::size_t ia, std::size_t ib,
                                const Contour& contour) {
  const std::size_t m = contour.exterior.size();
  if (ia == ib) throw std::invalid_argument("chordal exploration needs distinct endpoints");
  ChordalSetup setup;
  // Counterclockwise from a to b is yellow, from b back to a blue.
  for (std::size_t k = (ia + 1) % m;; k = (k + 1) % m) {
    setup.exterior.emplace(contour.exterior[k], Color::Yellow);
    if (k == ib) break;
  }
  for (std::size_t k = (ib + 1) % m;; k = (k + 1) % m) {
    setup.exterior[contour.exterior[k]] = Color::Blue;
    if (k == ia) break;
  }
  const Junction& j = contour.junctions[ia];
  setup.start = {j.before, j.after};
  if (ahead(setup.start) != j.domain || !region.contains(j.domain))
    throw std::logic_error("chordal start edge does not point into the domain");
  return setup;
}

std::size_t nearest_junction(const Contour& contour, Point p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < contour.junctions.size(); ++k) {
    const Point v = contour.junctions[k].vertex;
    const double d = std::hypot(v.x - p.x, v.y - p.y);
    if (d < best_d - 1e-12) best_d = d, best = k;
  }
  return best;
}

// Runs the chordal walk; `observe(path, probe)` is called after every step
// and returns true to stop early.
template <class Observer>
void chordal_walk(const ColorView& colors, const ChordalSetup& setup, ExplorationPath& path,
                  bool record, Observer&& observe) {
  const Region& region = colors.region();
  path.start = setup.start;
  DirectedEdge e = setup.start;
  const std::size_t cap = 6 * (region.size() + setup.exterior.size()) + 16;
  for (std::size_t step = 0;; ++step) {
    if (step > cap) throw std::logic_error("chordal walk exceeded its step bound");
    const SiteCoord x = ahead(e);
    Color c;
    if (const SiteId id = region.id_of(x); id != kNoSite) {
      c = colors.color(id);
    } else {
      const auto it = setup.exterior.find(x);
      if (it == setup.exterior.end()) throw std::logic_error("chordal walk left the contour");
      c = it->second;
    }
    e = advance(e, x, c);
    path.turn_sum += static_cast<int>(turn_for(c));
    if (record) path.steps.push_back({e, turn_for(c), c});
    if (observe(x)) return;
    if (!region.contains(e.left) && !region.contains(e.right)) {
      path.status = ExplorationStatus::ReachedTarget;
      return;
    }
  }
}

enum class SemiClass { Domain, Inner, Outer, AxisLeft, AxisRight };

SemiClass classify_semi(const Region& region, SiteCoord s) {
  if (region.contains(s)) return SemiClass::Domain;
  const double d = radius(s);
  if (d < region.spec().inner - kCellCircumradius) return SemiClass::Inner;
  if (d >= region.spec().outer - kCellCircumradius) return SemiClass::Outer;
  return position(s).x < 0.0 ? SemiClass::AxisLeft : SemiClass::AxisRight;
}

ChordalSetup semi_annulus_setup(const Region& region) {
  if (region.spec().kind != RegionKind::SemiAnnulus)
    throw std::invalid_argument("expected a semi-annulus, got " + region.spec().to_string());
  if (!simply_connected(region))
    throw std::invalid_argument(region.spec().to_string() + " is not simply connected");
  const Contour contour = trace_contour(region);
  std::size_t ia = contour.junctions.size(), ib = ia;
  for (std::size_t k = 0; k < contour.junctions.size(); ++k) {
    const auto& j = contour.junctions[k];
    const SemiClass b = classify_semi(region, j.before), a = classify_semi(region, j.after);
    if (ia == contour.junctions.size() && b == SemiClass::Inner && a == SemiClass::AxisRight) ia = k;
    if (ib == contour.junctions.size() && b == SemiClass::Outer && a == SemiClass::AxisLeft) ib = k;
  }
  if (ia == contour.junctions.size() || ib == contour.junctions.size())
    throw std::logic_error("semi-annulus contour lacks the points r and -R");
  return make_chordal_setup(region, ia, ib, contour);
}

int semi_annulus_walk(const ColorView& colors, ExplorationPath& path, bool record) {
  const Region& region = colors.region();
  const ChordalSetup setup = semi_annulus_setup(region);
  bool at_outer = false;
  chordal_walk(colors, setup, path, record, [&](SiteCoord probe) {
    switch (classify_semi(region, probe)) {
      case SemiClass::Inner:
        if (at_outer) ++path.crossings, at_outer = false;
        break;
      case SemiClass::Outer:
        if (!at_outer) ++path.crossings, at_outer = true;
        break;
      case SemiClass::AxisLeft:
        path.status = ExplorationStatus::HitInterval;
        return true;
      default: break;
    }
    return false;
  });
  return path.crossings;
}

// ---------------------------------------------------------------------------
// Annulus exploration

enum class AnnulusMode { StopAtInner, CountCrossings };

class AnnulusWalker {
 public:
  AnnulusWalker(const ColorView& colors, const std::vector<std::uint8_t>& in_domain,
                double start_angle, AnnulusMode mode, int crossing_target, bool record)
      : colors_(colors), region_(colors.region()), in_domain_(in_domain),
        inner_cut_(region_.spec().inner - kCellCircumradius), start_angle_(start_angle), mode_(mode),
        target_(crossing_target), record_(record) {
    const std::size_t n = region_.size();
    explored_.assign(n, kUnexplored);
    parent_.resize(n);
    sheet_.assign(n, 0);
    size_.assign(n, 1);
  }

  ExplorationPath run() {
    ExplorationPath path;
    path.start = find_start();
    DirectedEdge e = path.start;
    const Point mid{0.5 * (position(e.left).x + position(e.right).x),
                    0.5 * (position(e.left).y + position(e.right).y)};
    theta_start_ = angle_of(mid);
    double tip_raw = angle_of(tip(e));
    double tip_lift = theta_start_ + wrap(tip_raw - theta_start_);
    std::unordered_map<std::uint64_t, double> vertices;
    vertices.emplace(vertex_key(e), tip_lift);
    bool at_outer = true;

    const std::size_t cap = 12 * region_.size() + 64;
    for (long step = 0;; ++step) {
      if (static_cast<std::size_t>(step) > cap)
        throw std::logic_error("annulus walk exceeded its step bound");
      const SiteCoord x = ahead(e);
      SiteId id = kNoSite;
      const Kind kind = classify(x, id);
      Color c;
      switch (kind) {
        case Kind::Domain: c = colors_.color(id); break;
        case Kind::Inner: c = Color::Yellow; break;
        case Kind::Outer: {
          const double lifted = tip_lift + wrap(argument(x) - tip_raw);
          c = lifted < theta_start_ ? Color::Blue : Color::Yellow;
          break;
        }
      }
      e = advance(e, x, c);
      path.turn_sum += static_cast<int>(turn_for(c));
      if (record_) path.steps.push_back({e, turn_for(c), c});
      const double raw = angle_of(tip(e));
      tip_lift += wrap(raw - tip_raw);
      tip_raw = raw;

      if (kind == Kind::Domain && explored_[static_cast<std::size_t>(id)] == kUnexplored &&
          explore(id, c)) {
        return disconnect(path, step, c == Color::Blue ? WindingVerdict::Anticlockwise
                                                       : WindingVerdict::Clockwise);
      }
      bool crossed = false;
      if (kind == Kind::Inner) {
        if (path.rho < 0) path.rho = step;
        if (at_outer) crossed = true, at_outer = false;
        if (mode_ == AnnulusMode::StopAtInner) {
          ++path.crossings;
          path.status = ExplorationStatus::HitInnerCircle;
          return path;
        }
      } else if (kind == Kind::Outer && !at_outer) {
        crossed = true, at_outer = true;
      }
      if (crossed) {
        // After the first touch the explored cells can wall off the inner
        // circle without a monochromatic circuit (the walk wraps around it).
        // A crossing completed after that point is not counted.
        if (path.crossings > 0 && inner_cut_off())
          return disconnect(path, step,
                            tip_lift < theta_start_ ? WindingVerdict::Clockwise
                                                    : WindingVerdict::Anticlockwise);
        ++path.crossings;
      }
      if (mode_ == AnnulusMode::CountCrossings && path.crossings >= target_) {
        path.status = ExplorationStatus::HitInnerCircle;
        return path;
      }
      // The projected walk revisits a vertex only after winding around.
      const auto [it, fresh] = vertices.emplace(vertex_key(e), tip_lift);
      if (!fresh) {
        const double winding = tip_lift - it->second;
        if (std::abs(winding) < kPi) throw std::logic_error("annulus walk closed a contractible loop");
        return disconnect(path, step,
                          winding > 0 ? WindingVerdict::Anticlockwise : WindingVerdict::Clockwise);
      }
    }
  }

  // Colour each domain cell was found to have, or kUnexplored.
  static constexpr std::int8_t kUnexplored = -1;
  const std::vector<std::int8_t>& explored() const { return explored_; }

 private:
  enum class Kind { Domain, Inner, Outer };

  Kind classify(SiteCoord s, SiteId& id) const {
    id = region_.id_of(s);
    if (id != kNoSite && in_domain_[static_cast<std::size_t>(id)]) return Kind::Domain;
    if (id == kNoSite && radius(s) < inner_cut_) return Kind::Inner;
    return Kind::Outer;
  }

  // Whether no path of unexplored domain cells joins the inner arc to the
  // outer boundary.
  bool inner_cut_off() const {
    const std::size_t n = region_.size();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<SiteId> stack;
    auto open = [&](SiteId v) {
      const auto i = static_cast<std::size_t>(v);
      return in_domain_[i] && explored_[i] == kUnexplored && !seen[i];
    };
    for (SiteId v : region_.arc(ArcLabel::Inner))
      if (open(v)) seen[static_cast<std::size_t>(v)] = 1, stack.push_back(v);
    SiteId dummy;
    while (!stack.empty()) {
      const SiteId v = stack.back();
      stack.pop_back();
      for (const auto& x : neighbors(region_.site(v)))
        if (classify(x, dummy) == Kind::Outer) return false;
      for (SiteId w : region_.neighbor_ids(v))
        if (w >= 0 && open(w)) seen[static_cast<std::size_t>(w)] = 1, stack.push_back(w);
    }
    return true;
  }

  DirectedEdge find_start() const {
    bool found = false;
    DirectedEdge best{};
    double best_score = 0.0, best_radius = 0.0;
    SiteId dummy;
    for (SiteId v = 0; v < static_cast<SiteId>(region_.size()); ++v) {
      if (!in_domain_[static_cast<std::size_t>(v)]) continue;
      const SiteCoord x = region_.site(v);
      for (std::size_t k = 0; k < 6; ++k) {
        const SiteCoord a = x + kDirections[k], b = x + kDirections[(k + 1) % 6];
        if (classify(a, dummy) != Kind::Outer || classify(b, dummy) != Kind::Outer) continue;
        for (const DirectedEdge cand : {DirectedEdge{a, b}, DirectedEdge{b, a}}) {
          if (ahead(cand) != x) continue;
          if (!(wrap(argument(cand.right) - argument(cand.left)) > 0.0)) continue;
          const Point pl = position(cand.left), pr = position(cand.right);
          const Point mid{0.5 * (pl.x + pr.x), 0.5 * (pl.y + pr.y)};
          const double score = std::abs(wrap(angle_of(mid) - start_angle_));
          const double rad = std::hypot(mid.x, mid.y);
          if (!found || score < best_score - 1e-12 ||
              (score < best_score + 1e-12 && rad > best_radius + 1e-12)) {
            found = true, best = cand, best_score = score, best_radius = rad;
          }
        }
      }
    }
    if (!found) throw std::logic_error("no start vertex on the outer boundary");
    return best;
  }

  std::pair<SiteId, int> find(SiteId v) {
    const auto i = static_cast<std::size_t>(v);
    if (parent_[i] == v) return {v, 0};
    const auto [root, s] = find(parent_[i]);
    sheet_[i] += s;
    parent_[i] = root;
    return {root, sheet_[i]};
  }

  // Adds a newly probed cell to its colour's explored clusters. Each cell
  // carries a sheet index so that lifted angles stay consistent along
  // adjacencies; an inconsistency means the cluster closes a circuit around
  // the inner circle.
  bool explore(SiteId v, Color c) {
    const auto i = static_cast<std::size_t>(v);
    const auto tag = static_cast<std::int8_t>(c);
    explored_[i] = tag;
    parent_[i] = v;
    sheet_[i] = 0;
    size_[i] = 1;
    const double av = argument(region_.site(v));
    for (SiteId w : region_.neighbor_ids(v)) {
      if (w < 0 || !in_domain_[static_cast<std::size_t>(w)] ||
          explored_[static_cast<std::size_t>(w)] != tag)
        continue;
      const double delta_raw = argument(region_.site(w)) - av;
      const int delta = static_cast<int>(std::lround((wrap(delta_raw) - delta_raw) / kTwoPi));
      const auto [rv, sv] = find(v);
      const auto [rw, sw] = find(w);
      if (rv == rw) {
        if (sw - sv != delta) return true;
        continue;
      }
      if (size_[static_cast<std::size_t>(rv)] >= size_[static_cast<std::size_t>(rw)]) {
        parent_[static_cast<std::size_t>(rw)] = rv;
        sheet_[static_cast<std::size_t>(rw)] = delta + sv - sw;
        size_[static_cast<std::size_t>(rv)] += size_[static_cast<std::size_t>(rw)];
      } else {
        parent_[static_cast<std::size_t>(rv)] = rw;
        sheet_[static_cast<std::size_t>(rv)] = sw - sv - delta;
        size_[static_cast<std::size_t>(rw)] += size_[static_cast<std::size_t>(rv)];
      }
    }
    return false;
  }

  ExplorationPath& disconnect(ExplorationPath& path, long step, WindingVerdict w) {
    path.status = ExplorationStatus::Disconnected;
    path.disconnection = step;
    path.winding = w;
    return path;
  }

  const ColorView& colors_;
  const Region& region_;
  const std::vector<std::uint8_t>& in_domain_;
  double inner_cut_;
  double start_angle_;
  AnnulusMode mode_;
  int target_;
  bool record_;
  double theta_start_ = 0.0;
  std::vector<std::int8_t> explored_;
  std::vector<SiteId> parent_;
  std::vector<int> sheet_;
  std::vector<int> size_;
};

void require_annulus(const Region& region) {
  if (region.spec().kind != RegionKind::Annulus)
    throw std::invalid_argument("expected an annulus, got " + region.spec().to_string());
}

}  // namespace

SiteCoord ahead(const DirectedEdge& e) {
  const int k = direction_index(e.right - e.left);
  if (k < 0) throw std::invalid_argument("edge cells are not adjacent");
  return e.left + kDirections[static_cast<std::size_t>((k + 1) % 6)];
}

Point tip(const DirectedEdge& e) {
  const Point a = position(e.left), b = position(e.right), c = position(ahead(e));
  return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

std::vector<DirectedEdge> ExplorationPath::edges() const {
  std::vector<DirectedEdge> out{start};
  for (const auto& s : steps) out.push_back(s.edge);
  return out;
}

ExplorationPath chordal_exploration(const Configuration& config, Point a, Point b) {
  const Region& region = config.region();
  if (!simply_connected(region))
    throw std::invalid_argument(region.spec().to_string() + " is not simply connected");
  const Contour contour = trace_contour(region);
  const ChordalSetup setup =
      make_chordal_setup(region, nearest_junction(contour, a), nearest_junction(contour, b), contour);
  ExplorationPath path;
  chordal_walk(config.view(), setup, path, true, [](SiteCoord) { return false; });
  return path;
}

int semi_annulus_crossing_count(const ColorView& colors) {
  ExplorationPath path;
  return semi_annulus_walk(colors, path, false);
}

int semi_annulus_crossing_count(const Configuration& config) {
  return semi_annulus_crossing_count(config.view());
}

ExplorationPath semi_annulus_exploration(const Configuration& config) {
  ExplorationPath path;
  semi_annulus_walk(config.view(), path, true);
  return path;
}

ExplorationPath annulus_exploration(const Configuration& config, double start_angle) {
  require_annulus(config.region());
  const std::vector<std::uint8_t> domain(config.size(), 1);
  return AnnulusWalker(config.view(), domain, start_angle, AnnulusMode::StopAtInner, 0, true).run();
}

bool ep_crossing_event(const ColorView& colors, int j) {
  require_annulus(colors.region());
  if (j < 2) throw std::invalid_argument("ep crossing event needs j >= 2");
  const std::vector<std::uint8_t> domain(colors.region().size(), 1);
  const ExplorationPath path =
      AnnulusWalker(colors, domain, 0.0, AnnulusMode::CountCrossings, j - 1, false).run();
  return path.crossings >= j - 1;
}

bool ep_crossing_event(const Configuration& config, int j) { return ep_crossing_event(config.view(), j); }

ExplorationPath ep_exploration(const Configuration& config, int j) {
  require_annulus(config.region());
  if (j < 2) throw std::invalid_argument("ep crossing event needs j >= 2");
  const std::vector<std::uint8_t> domain(config.size(), 1);
  return AnnulusWalker(config.view(), domain, 0.0, AnnulusMode::CountCrossings, j - 1, true).run();
}

bool one_arm_nested(const ColorView& colors) {
  const Region& region = colors.region();
  require_annulus(region);
  const std::size_t n = region.size();
  std::vector<std::uint8_t> domain(n, 1);
  std::size_t domain_size = n;
  for (;;) {
    AnnulusWalker walker(colors, domain, 0.0, AnnulusMode::StopAtInner, 0, false);
    const ExplorationPath path = walker.run();
    if (path.status == ExplorationStatus::HitInnerCircle) return true;
    if (path.winding == WindingVerdict::Clockwise) return false;

    // A blue circuit joined to the outer boundary: continue inside it.
    const auto& explored = walker.explored();
    std::vector<std::uint8_t> next(n, 0);
    std::vector<SiteId> stack;
    for (SiteId v : region.arc(ArcLabel::Inner)) {
      const auto i = static_cast<std::size_t>(v);
      if (!domain[i]) continue;
      if (explored[i] == static_cast<std::int8_t>(Color::Blue)) return true;
      if (explored[i] == AnnulusWalker::kUnexplored && !next[i]) next[i] = 1, stack.push_back(v);
    }
    std::size_t next_size = stack.size();
    while (!stack.empty()) {
      const SiteId v = stack.back();
      stack.pop_back();
      for (SiteId w : region.neighbor_ids(v)) {
        if (w < 0) continue;
        const auto i = static_cast<std::size_t>(w);
        if (domain[i] && !next[i] && explored[i] == AnnulusWalker::kUnexplored) {
          next[i] = 1;
          ++next_size;
          stack.push_back(w);
        }
      }
    }
    if (next_size == 0) return false;
    if (next_size >= domain_size) throw std::logic_error("nested exploration failed to shrink");
    domain = std::move(next);
    domain_size = next_size;
  }
}

bool one_arm_nested(const Configuration& config) { return one_arm_nested(config.view()); }

void write_path_dump(std::ostream& os, const ExplorationPath& path) {
  for (const auto& s : path.steps)
    os << s.edge.left.q << ' ' << s.edge.left.r << ' ' << s.edge.right.q << ' ' << s.edge.right.r
       << ' ' << (s.turn == Turn::Left ? 'L' : 'R') << ' ' << to_string(s.probed) << '\n';
}

}  // namespace perc
