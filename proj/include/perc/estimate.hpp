#ifndef PERC_ESTIMATE_HPP
#define PERC_ESTIMATE_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perc/connectivity.hpp"

namespace perc {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_ci(std::uint64_t hits, std::uint64_t trials, double z = kZ95);

/// Number of worker threads to use when the caller passes 0.
unsigned default_workers();

struct EstimateRecord {
  std::string event;  // ArmEvent::name()
  int j = 1;
  double r = 0.0;
  double R = 0.0;
  double p = 0.5;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::uint64_t seed = 0;
};

using TrialPredicate = std::function<bool(const ColorView&, Workspace&)>;

/// Hits of `event` over trials sampled lazily on `region`; trial i uses
/// seed derive_seed(master_seed, i). Independent of the worker count.
std::uint64_t count_hits(const Region& region, double p, const TrialPredicate& event,
                         std::uint64_t trials, std::uint64_t master_seed, unsigned workers);

EstimateRecord run_trials(const ArmEvent& event, std::uint64_t trials, std::uint64_t master_seed,
                          unsigned workers, double p = 0.5);

/// One record per R, event_for(R) evaluated with seed derived from
/// (master_seed, R). R values must increase strictly and be at least 2r.
std::vector<EstimateRecord> sweep_scale(const std::function<ArmEvent(double R)>& event_for,
                                        const std::vector<double>& radii, double r,
                                        std::uint64_t trials, std::uint64_t master_seed,
                                        unsigned workers);

/// Seed used by sweep_scale for outer radius R.
std::uint64_t sweep_seed(std::uint64_t master_seed, double R);

struct ExponentFit {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
  double chi2 = 0.0;  // weighted residual sum of squares
  std::size_t n_points = 0;
};

struct FitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A point for a log-log fit: log(y) against log(x), var = Var(log y).
struct LogPoint {
  double x = 0.0;
  double y = 0.0;
  double var = 0.0;
};

/// Weighted least squares of log y on log x with weights 1/var; the slope is
/// returned as is. Needs at least 3 points with x, y, var > 0.
ExponentFit fit_loglog(const std::vector<LogPoint>& points);

/// Power-law fit p_hat ~ C R^(-slope). Uses records with at least
/// `min_hits` hits and at least one miss; throws FitError listing every
/// record when fewer than 3 qualify.
ExponentFit fit_power_law(const std::vector<EstimateRecord>& records, std::uint64_t min_hits = 20);

struct NearCriticalRecord {
  double p = 0.5;
  double L = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t theta_hits = 0;  // origin joined to the boundary of Disc(L)
  double theta_hat = 0.0;
  double theta_lo = 0.0;
  double theta_hi = 1.0;
  std::uint64_t finite = 0;  // trials whose origin cluster stayed inside
  std::uint64_t finite_clusters = 0;  // those with a blue origin
  double chi_hat = 0.0;      // mean |C| over trials whose cluster stayed inside
  double chi_se = 0.0;
  double xi_hat = 0.0;       // sqrt(mean sum_{y in C}|y|^2 over finite clusters / chi_hat)
  double xi_se = 0.0;
  std::uint64_t seed = 0;
};

/// All p share trial seeds (one uniform per site, thresholded at p), so
/// the estimates are coupled monotonically in p.
std::vector<NearCriticalRecord> near_critical_sweep(std::vector<double> ps, double L,
                                                    std::uint64_t trials, std::uint64_t master_seed,
                                                    unsigned workers);

enum class NearCriticalQuantity { Theta, Chi, Xi };

/// Fit points (p - 1/2, estimate, Var(log estimate)) for one quantity, from
/// records with p > 1/2 and at least `min_hits` boundary hits (theta) or
/// finite blue clusters (chi, xi). Pass them to fit_loglog for the raw
/// slope against p - 1/2.
std::vector<LogPoint> near_critical_points(const std::vector<NearCriticalRecord>& records,
                                           NearCriticalQuantity quantity, std::uint64_t min_hits = 20);

}  // namespace perc

#endif  // PERC_ESTIMATE_HPP
