#include "perc/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <thread>

#include "perc/rng.hpp"

namespace perc {

Interval wilson_ci(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson_ci: trials must be positive");
  if (hits > trials) throw std::invalid_argument("wilson_ci: hits exceed trials");
  if (!(z > 0.0)) throw std::invalid_argument("wilson_ci: z must be positive");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (hits == 0) ci.lo = 0.0;
  if (hits == trials) ci.hi = 1.0;
  return ci;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace {

// Runs body(worker, begin, end) over a static partition of [0, n).
template <class Body>
void parallel_chunks(std::uint64_t n, unsigned workers, Body&& body) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n)));
  if (workers == 1) {
    body(0u, std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] { body(w, n * w / workers, n * (w + 1) / workers); });
  for (auto& t : pool) t.join();
}

}  // namespace

std::uint64_t count_hits(const Region& region, double p, const TrialPredicate& event,
                         std::uint64_t trials, std::uint64_t master_seed, unsigned workers) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (workers == 0) workers = default_workers();
  std::vector<std::uint64_t> hits(workers, 0);
  parallel_chunks(trials, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    Workspace ws;
    std::uint64_t h = 0;
    for (std::uint64_t i = lo; i < hi; ++i)
      if (event(ColorView::lazy(region, derive_seed(master_seed, i), p), ws)) ++h;
    hits[w] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

EstimateRecord run_trials(const ArmEvent& event, std::uint64_t trials, std::uint64_t master_seed,
                          unsigned workers, double p) {
  event.validate();
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const auto region = make_region(event.spec);
  EstimateRecord rec;
  rec.event = event.name();
  rec.j = event.j;
  rec.r = event.spec.inner;
  rec.R = event.spec.outer;
  rec.p = p;
  rec.trials = trials;
  rec.seed = master_seed;
  rec.hits = count_hits(
      *region, p, [&](const ColorView& c, Workspace& ws) { return eval_event(c, event, ws); }, trials,
      master_seed, workers);
  rec.p_hat = static_cast<double>(rec.hits) / static_cast<double>(trials);
  const Interval ci = wilson_ci(rec.hits, trials);
  rec.ci_lo = ci.lo;
  rec.ci_hi = ci.hi;
  return rec;
}

std::uint64_t sweep_seed(std::uint64_t master_seed, double R) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(std::llround(R * 1024.0)));
}

std::vector<EstimateRecord> sweep_scale(const std::function<ArmEvent(double R)>& event_for,
                                        const std::vector<double>& radii, double r,
                                        std::uint64_t trials, std::uint64_t master_seed,
                                        unsigned workers) {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 2.0 * r)
      throw std::invalid_argument("outer radius " + std::to_string(radii[k]) + " is below 2r");
    if (k > 0 && !(radii[k] > radii[k - 1]))
      throw std::invalid_argument("outer radii must increase strictly");
  }
  std::vector<EstimateRecord> out;
  for (double R : radii) out.push_back(run_trials(event_for(R), trials, sweep_seed(master_seed, R), workers));
  return out;
}

ExponentFit fit_loglog(const std::vector<LogPoint>& points) {
  if (points.size() < 3) throw FitError("need at least 3 points, got " + std::to_string(points.size()));
  double sw = 0, sx = 0, sy = 0;
  for (const auto& pt : points) {
    if (!(pt.x > 0 && pt.y > 0 && pt.var > 0)) throw FitError("fit points need x, y, var > 0");
    const double w = 1.0 / pt.var;
    sw += w;
    sx += w * std::log(pt.x);
    sy += w * std::log(pt.y);
  }
  const double xbar = sx / sw, ybar = sy / sw;
  double sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    const double w = 1.0 / pt.var, dx = std::log(pt.x) - xbar;
    sxx += w * dx * dx;
    sxy += w * dx * (std::log(pt.y) - ybar);
  }
  if (!(sxx > 0)) throw FitError("fit points need at least two distinct x values");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.std_error = 1.0 / std::sqrt(sxx);
  fit.n_points = points.size();
  for (const auto& pt : points) {
    const double res = std::log(pt.y) - fit.intercept - fit.slope * std::log(pt.x);
    fit.chi2 += res * res / pt.var;
  }
  return fit;
}

ExponentFit fit_power_law(const std::vector<EstimateRecord>& records, std::uint64_t min_hits) {
  std::vector<LogPoint> points;
  std::string report;
  for (const auto& rec : records) {
    char line[160];
    const bool usable = rec.hits >= min_hits && rec.hits < rec.trials;
    std::snprintf(line, sizeof line, "\n  R=%g hits=%llu trials=%llu %s", rec.R,
                  static_cast<unsigned long long>(rec.hits), static_cast<unsigned long long>(rec.trials),
                  usable ? "used" : rec.hits < min_hits ? "too few hits" : "no misses");
    report += line;
    if (!usable) continue;
    const double n = static_cast<double>(rec.trials), ph = rec.p_hat;
    points.push_back({rec.R, ph, (1.0 - ph) / (ph * n)});
  }
  if (points.size() < 3)
    throw FitError("power-law fit needs 3 records with at least " + std::to_string(min_hits) +
                   " hits and one miss:" + report);
  ExponentFit fit = fit_loglog(points);
  fit.slope = -fit.slope;
  return fit;
}

namespace {

using u128 = unsigned __int128;

struct NearCriticalSums {
  std::vector<std::uint64_t> hits, finite, occupied, n_sum, s_sum;
  std::vector<u128> nn_sum, ss_sum, ns_sum;

  explicit NearCriticalSums(std::size_t k)
      : hits(k, 0), finite(k, 0), occupied(k, 0), n_sum(k, 0), s_sum(k, 0), nn_sum(k, 0), ss_sum(k, 0), ns_sum(k, 0) {}

  void add(const NearCriticalSums& o) {
    for (std::size_t i = 0; i < hits.size(); ++i) {
      hits[i] += o.hits[i], finite[i] += o.finite[i], occupied[i] += o.occupied[i], n_sum[i] += o.n_sum[i], s_sum[i] += o.s_sum[i];
      nn_sum[i] += o.nn_sum[i], ss_sum[i] += o.ss_sum[i], ns_sum[i] += o.ns_sum[i];
    }
  }
};

// Grows the origin's cluster in order of bottleneck value (the smallest p at
// which a site joins it), so one pass per trial serves every p.
class BottleneckFlood {
 public:
  explicit BottleneckFlood(const Region& region) : region_(region), stamp_(region.size(), 0) {}

  void run(std::uint64_t seed, SiteId origin, const std::vector<double>& ps, NearCriticalSums& sums) {
    ++epoch_;
    heap_ = {};
    popped_.clear();
    const double pmax = ps.back();
    auto uniform = [&](SiteId v) { return site_uniform(seed, region_.site(v)); };
    stamp_[static_cast<std::size_t>(origin)] = epoch_;
    heap_.push({uniform(origin), origin});
    double reach = 2.0;  // bottleneck value of the first boundary site
    while (!heap_.empty()) {
      const auto [b, v] = heap_.top();
      heap_.pop();
      if (b >= pmax) break;
      if (region_.in_arc(v, ArcLabel::Outer)) {
        reach = b;
        break;
      }
      const SiteCoord s = region_.site(v);
      popped_.push_back({b, static_cast<std::uint64_t>(s.q * s.q + s.q * s.r + s.r * s.r)});
      for (SiteId w : region_.neighbor_ids(v)) {
        if (w < 0 || stamp_[static_cast<std::size_t>(w)] == epoch_) continue;
        stamp_[static_cast<std::size_t>(w)] = epoch_;
        heap_.push({std::max(b, uniform(w)), w});
      }
    }
    std::size_t upto = 0;
    std::uint64_t n = 0, s = 0;
    for (std::size_t k = 0; k < ps.size(); ++k) {
      if (reach < ps[k]) {
        ++sums.hits[k];
        continue;
      }
      while (upto < popped_.size() && popped_[upto].first < ps[k]) s += popped_[upto++].second, ++n;
      ++sums.finite[k];
      if (n > 0) ++sums.occupied[k];
      sums.n_sum[k] += n;
      sums.s_sum[k] += s;
      sums.nn_sum[k] += static_cast<u128>(n) * n;
      sums.ss_sum[k] += static_cast<u128>(s) * s;
      sums.ns_sum[k] += static_cast<u128>(n) * s;
    }
  }

 private:
  using Entry = std::pair<double, SiteId>;
  const Region& region_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::vector<std::pair<double, std::uint64_t>> popped_;
};

}  // namespace

std::vector<NearCriticalRecord> near_critical_sweep(std::vector<double> ps, double L,
                                                    std::uint64_t trials, std::uint64_t master_seed,
                                                    unsigned workers) {
  if (ps.empty()) throw std::invalid_argument("near-critical sweep needs at least one p");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  for (double p : ps)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  const auto region = make_region(RegionSpec::disc(L));
  const SiteId origin = region->id_of({0, 0});
  if (origin == kNoSite) throw std::invalid_argument("disc too small to contain the origin");

  if (workers == 0) workers = default_workers();
  std::vector<NearCriticalSums> partial(workers, NearCriticalSums(ps.size()));
  parallel_chunks(trials, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    BottleneckFlood flood(*region);
    for (std::uint64_t i = lo; i < hi; ++i) flood.run(derive_seed(master_seed, i), origin, ps, partial[w]);
  });
  NearCriticalSums sums(ps.size());
  for (const auto& part : partial) sums.add(part);

  std::vector<NearCriticalRecord> out;
  const double n = static_cast<double>(trials);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    NearCriticalRecord rec;
    rec.p = ps[k];
    rec.L = L;
    rec.trials = trials;
    rec.seed = master_seed;
    rec.theta_hits = sums.hits[k];
    rec.theta_hat = static_cast<double>(rec.theta_hits) / n;
    const Interval ci = wilson_ci(rec.theta_hits, trials);
    rec.theta_lo = ci.lo;
    rec.theta_hi = ci.hi;
    rec.finite = sums.finite[k];
    rec.finite_clusters = sums.occupied[k];
    // Means over trials whose cluster stayed inside; a yellow origin counts as
    // an empty finite cluster.
    const double m = static_cast<double>(rec.finite);
    const double mn = m > 0 ? static_cast<double>(sums.n_sum[k]) / m : 0.0;
    const double ms = m > 0 ? static_cast<double>(sums.s_sum[k]) / m : 0.0;
    const double vn = m > 0 ? std::max(0.0, static_cast<double>(sums.nn_sum[k]) / m - mn * mn) / m : 0.0;
    const double vs = m > 0 ? std::max(0.0, static_cast<double>(sums.ss_sum[k]) / m - ms * ms) / m : 0.0;
    const double cns = m > 0 ? (static_cast<double>(sums.ns_sum[k]) / m - mn * ms) / m : 0.0;
    rec.chi_hat = mn;
    rec.chi_se = std::sqrt(vn);
    if (mn > 0 && ms > 0) {
      const double ratio = ms / mn;
      rec.xi_hat = std::sqrt(ratio);
      const double rel = vs / (ms * ms) + vn / (mn * mn) - 2.0 * cns / (ms * mn);
      rec.xi_se = 0.5 * rec.xi_hat * std::sqrt(std::max(0.0, rel));
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<LogPoint> near_critical_points(const std::vector<NearCriticalRecord>& records,
                                           NearCriticalQuantity quantity, std::uint64_t min_hits) {
  std::vector<LogPoint> out;
  for (const auto& rec : records) {
    if (!(rec.p > 0.5)) continue;
    const double x = rec.p - 0.5, n = static_cast<double>(rec.trials);
    switch (quantity) {
      case NearCriticalQuantity::Theta:
        if (rec.theta_hits >= min_hits && rec.theta_hits < rec.trials)
          out.push_back({x, rec.theta_hat, (1.0 - rec.theta_hat) / (rec.theta_hat * n)});
        break;
      case NearCriticalQuantity::Chi:
        if (rec.finite_clusters >= min_hits && rec.chi_hat > 0 && rec.chi_se > 0)
          out.push_back({x, rec.chi_hat, (rec.chi_se * rec.chi_se) / (rec.chi_hat * rec.chi_hat)});
        break;
      case NearCriticalQuantity::Xi:
        if (rec.finite_clusters >= min_hits && rec.xi_hat > 0 && rec.xi_se > 0)
          out.push_back({x, rec.xi_hat, (rec.xi_se * rec.xi_se) / (rec.xi_hat * rec.xi_hat)});
        break;
    }
  }
  return out;
}

}  // namespace perc
