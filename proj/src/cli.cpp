#include "perc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "perc/estimate.hpp"
#include "perc/explore.hpp"
#include "perc/selftest.hpp"

namespace perc {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CommonFlags {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<unsigned> workers;
  std::string out;
  std::string format = "csv";
  std::uint64_t min_hits = 20;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--trials", flags.trials, "Trials per record")->check(CLI::PositiveNumber);
  sub->add_option("--seed", flags.seed, "Master seed");
  sub->add_option("--workers", flags.workers, "Worker threads (0 = all cores; default $PERC_WORKERS)");
  sub->add_option("--out", flags.out, "Write records to this file instead of stdout");
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--min-hits", flags.min_hits, "Minimum hits for a record to enter a fit");
}

unsigned resolve_workers(const CommonFlags& flags) {
  if (flags.workers) return *flags.workers == 0 ? default_workers() : *flags.workers;
  if (const char* env = std::getenv("PERC_WORKERS"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v > 4096) throw UsageError(std::string("PERC_WORKERS is not a worker count: ") + env);
    return v == 0 ? default_workers() : static_cast<unsigned>(v);
  }
  return default_workers();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Row {
  std::string event, kind;
  int j = 0;
  std::optional<double> r, R, L;
  double p = 0.5;
  std::uint64_t trials = 0, hits = 0;
  double p_hat = 0, ci_lo = 0, ci_hi = 0;
  std::uint64_t seed = 0;
};

struct FitRow {
  std::string name;
  std::optional<ExponentFit> fit;  // empty when not estimated
  double theory = 0;
  std::string note;
};

struct Report {
  std::string command;
  std::vector<Row> rows;
  std::vector<FitRow> fits;
  std::vector<std::pair<std::string, std::string>> notes;
};

Row row_from(const EstimateRecord& rec, const std::string& kind) {
  Row row;
  row.event = rec.event;
  row.kind = kind;
  row.j = rec.j;
  row.r = rec.r;
  row.R = rec.R;
  row.p = rec.p;
  row.trials = rec.trials;
  row.hits = rec.hits;
  row.p_hat = rec.p_hat;
  row.ci_lo = rec.ci_lo;
  row.ci_hi = rec.ci_hi;
  row.seed = rec.seed;
  return row;
}

void write_csv(std::ostream& os, const Report& report) {
  os << "event,kind,j,r,R,L,p,trials,hits,p_hat,ci_lo,ci_hi,seed\n";
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& r : report.rows)
    os << r.event << ',' << r.kind << ',' << r.j << ',' << opt(r.r) << ',' << opt(r.R) << ',' << opt(r.L)
       << ',' << num(r.p) << ',' << r.trials << ',' << r.hits << ',' << num(r.p_hat) << ','
       << num(r.ci_lo) << ',' << num(r.ci_hi) << ',' << r.seed << '\n';
  os << "fit,slope,stderr,theory,n_points\n";
  for (const auto& f : report.fits) {
    if (f.fit)
      os << f.name << ',' << num(f.fit->slope) << ',' << num(f.fit->std_error) << ',' << num(f.theory)
         << ',' << f.fit->n_points << '\n';
    else
      os << f.name << ",not estimated,,," << 0 << '\n';
  }
}

void write_json(std::ostream& os, const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["records"] = nlohmann::ordered_json::array();
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nullptr; };
  for (const auto& r : report.rows)
    doc["records"].push_back({{"event", r.event}, {"kind", r.kind}, {"j", r.j}, {"r", opt(r.r)},
                              {"R", opt(r.R)}, {"L", opt(r.L)}, {"p", r.p}, {"trials", r.trials},
                              {"hits", r.hits}, {"p_hat", r.p_hat}, {"ci_lo", r.ci_lo},
                              {"ci_hi", r.ci_hi}, {"seed", r.seed}});
  doc["fits"] = nlohmann::ordered_json::array();
  for (const auto& f : report.fits) {
    nlohmann::ordered_json o{{"fit", f.name}};
    if (f.fit) {
      o["slope"] = f.fit->slope;
      o["stderr"] = f.fit->std_error;
      o["theory"] = f.theory;
      o["n_points"] = f.fit->n_points;
    } else {
      o["status"] = f.note.empty() ? "not estimated" : f.note;
    }
    doc["fits"].push_back(o);
  }
  doc["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.notes) doc["notes"][k] = v;
  os << doc.dump(2) << '\n';
}

void write_summary(std::ostream& os, const Report& report) {
  for (const auto& f : report.fits) {
    if (f.fit) {
      char line[200];
      std::snprintf(line, sizeof line, "%s: slope %.4f +- %.4f (theory %.5f, %zu points, chi2 %.2f)\n",
                    f.name.c_str(), f.fit->slope, f.fit->std_error, f.theory, f.fit->n_points,
                    f.fit->chi2);
      os << line;
    } else {
      os << f.name << ": " << (f.note.empty() ? "not estimated" : f.note);
      if (f.theory != 0) {
        char th[48];
        std::snprintf(th, sizeof th, " (theory %.5f)", f.theory);
        os << th;
      }
      os << '\n';
    }
  }
  for (const auto& [k, v] : report.notes) os << k << ": " << v << '\n';
}

int emit(const Report& report, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::ostringstream body;
  if (flags.format == "json")
    write_json(body, report);
  else
    write_csv(body, report);
  if (flags.out.empty()) {
    out << body.str();
    write_summary(err, report);
  } else {
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) throw UsageError("cannot open " + flags.out + " for writing");
    file << body.str();
    if (!file) throw UsageError("failed writing " + flags.out);
    write_summary(out, report);
  }
  return kExitOk;
}

FitRow power_fit(const std::string& name, const std::vector<EstimateRecord>& recs, double theory,
                 std::uint64_t min_hits) {
  FitRow row{name, std::nullopt, theory, ""};
  try {
    row.fit = fit_power_law(recs, min_hits);
  } catch (const FitError& e) {
    row.note = std::string("fit failed: ") + e.what();
  }
  return row;
}

EstimateRecord predicate_record(const std::string& name, int j, const RegionSpec& spec,
                                const TrialPredicate& event, const CommonFlags& flags,
                                unsigned workers) {
  spec.validate();
  const auto region = make_region(spec);
  EstimateRecord rec;
  rec.event = name;
  rec.j = j;
  rec.r = spec.inner;
  rec.R = spec.outer;
  rec.trials = flags.trials;
  rec.seed = sweep_seed(flags.seed, spec.outer);
  rec.hits = count_hits(*region, 0.5, event, flags.trials, rec.seed, workers);
  rec.p_hat = static_cast<double>(rec.hits) / static_cast<double>(rec.trials);
  const Interval ci = wilson_ci(rec.hits, rec.trials);
  rec.ci_lo = ci.lo;
  rec.ci_hi = ci.hi;
  return rec;
}

void check_radii(const std::vector<double>& radii, double r) {
  if (radii.empty()) throw UsageError("--R needs at least one radius");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] >= 2.0 * r)) throw UsageError("each R must be at least 2r = " + num(2.0 * r));
    if (k > 0 && !(radii[k] > radii[k - 1])) throw UsageError("R values must increase strictly");
  }
}

int command_halfplane(int j, double r, const std::vector<double>& radii, const CommonFlags& flags,
                      std::ostream& out, std::ostream& err) {
  check_radii(radii, r);
  const unsigned workers = resolve_workers(flags);
  const auto recs = sweep_scale([&](double R) { return ArmEvent::half_plane(r, R, j); }, radii, r,
                                flags.trials, flags.seed, workers);
  Report report{"halfplane", {}, {}, {}};
  for (const auto& rec : recs) report.rows.push_back(row_from(rec, "halfplane"));
  report.fits.push_back(power_fit("fit", recs, j * (j + 1) / 6.0, flags.min_hits));
  return emit(report, flags, out, err);
}

int command_plane(int j, const std::string& mode, double r, const std::vector<double>& radii,
                  const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  check_radii(radii, r);
  if (j < 2) throw UsageError("plane events need --j >= 2");
  if (mode == "clusters" && j % 2 != 0) throw UsageError("--mode clusters needs an even --j (j = 2k arms)");
  const unsigned workers = resolve_workers(flags);
  std::vector<EstimateRecord> recs;
  for (double R : radii) {
    if (mode == "ep") {
      recs.push_back(predicate_record(
          "EP" + std::to_string(j), j, RegionSpec::annulus(r, R),
          [j](const ColorView& c, Workspace&) { return ep_crossing_event(c, j); }, flags, workers));
    } else {
      const ArmEvent e = mode == "clusters" ? ArmEvent::k_clusters(RegionSpec::annulus(r, R), j / 2)
                                            : ArmEvent::plane_polychromatic(r, R, j);
      recs.push_back(run_trials(e, flags.trials, sweep_seed(flags.seed, R), workers));
    }
  }
  Report report{"plane", {}, {}, {}};
  for (const auto& rec : recs) report.rows.push_back(row_from(rec, mode));
  report.fits.push_back(power_fit("fit", recs, (j * j - 1) / 12.0, flags.min_hits));
  if (mode == "clusters") report.notes.push_back({"clusters", std::to_string(j / 2) + " disjoint blue crossing clusters"});
  return emit(report, flags, out, err);
}

int command_onearm(const std::string& algorithm, const std::vector<double>& radii,
                   const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  check_radii(radii, 2.0);
  const unsigned workers = resolve_workers(flags);
  std::vector<EstimateRecord> recs;
  for (double R : radii) {
    if (algorithm == "nested")
      recs.push_back(predicate_record(
          "A1", 1, RegionSpec::annulus(2.0, R),
          [](const ColorView& c, Workspace&) { return one_arm_nested(c); }, flags, workers));
    else
      recs.push_back(run_trials(ArmEvent::one_arm(R), flags.trials, sweep_seed(flags.seed, R), workers));
  }
  Report report{"onearm", {}, {}, {}};
  for (const auto& rec : recs) report.rows.push_back(row_from(rec, "onearm_" + algorithm));
  report.fits.push_back(power_fit("fit", recs, 5.0 / 48.0, flags.min_hits));
  report.notes.push_back({"eta", "5/24 (point-to-point connectivity exponent, 2 x 5/48)"});
  return emit(report, flags, out, err);
}

int command_nearcrit(const std::vector<double>& ps, double L, const CommonFlags& flags,
                     std::ostream& out, std::ostream& err) {
  if (ps.empty()) throw UsageError("--p needs at least one value");
  for (double p : ps)
    if (!(p > 0.5 && p <= 1.0)) throw UsageError("every p must lie in (1/2, 1], got " + num(p));
  if (!(L >= 64)) throw UsageError("--L must be at least 64");
  const unsigned workers = resolve_workers(flags);
  const auto recs = near_critical_sweep(ps, L, flags.trials, flags.seed, workers);
  Report report{"nearcrit", {}, {}, {}};
  for (const auto& rec : recs) {
    Row base;
    base.kind = "nearcrit";
    base.L = rec.L;
    base.p = rec.p;
    base.trials = rec.trials;
    base.seed = rec.seed;
    Row theta = base, chi = base, xi = base;
    theta.event = "theta";
    theta.hits = rec.theta_hits;
    theta.p_hat = rec.theta_hat;
    theta.ci_lo = rec.theta_lo;
    theta.ci_hi = rec.theta_hi;
    chi.event = "chi";
    chi.hits = rec.finite_clusters;
    chi.p_hat = rec.chi_hat;
    chi.ci_lo = std::max(0.0, rec.chi_hat - kZ95 * rec.chi_se);
    chi.ci_hi = rec.chi_hat + kZ95 * rec.chi_se;
    xi.event = "xi";
    xi.hits = rec.finite_clusters;
    xi.p_hat = rec.xi_hat;
    xi.ci_lo = std::max(0.0, rec.xi_hat - kZ95 * rec.xi_se);
    xi.ci_hi = rec.xi_hat + kZ95 * rec.xi_se;
    report.rows.insert(report.rows.end(), {theta, chi, xi});
  }
  auto fit = [](const std::string& name, const std::vector<LogPoint>& pts, double theory) {
    FitRow row{name, std::nullopt, theory, ""};
    try {
      row.fit = fit_loglog(pts);
    } catch (const FitError& e) {
      row.note = std::string("fit failed: ") + e.what();
    }
    return row;
  };
  auto points = [&](NearCriticalQuantity q) { return near_critical_points(recs, q, flags.min_hits); };
  report.fits.push_back(fit("fit_theta", points(NearCriticalQuantity::Theta), 5.0 / 36.0));
  report.fits.push_back(fit("fit_chi", points(NearCriticalQuantity::Chi), -43.0 / 18.0));
  report.fits.push_back(fit("fit_xi", points(NearCriticalQuantity::Xi), -4.0 / 3.0));
  report.fits.push_back({"fit_xi_star", std::nullopt, 0.0, "not estimated"});
  report.notes.push_back({"slopes", "d log(quantity) / d log(p - 1/2)"});
  report.notes.push_back({"finite_size",
                          "finite clusters are those not reaching the boundary of Disc(" + num(L) +
                              "); exponents carry o(1) corrections, so these are checks of sign and "
                              "rough magnitude only"});
  return emit(report, flags, out, err);
}

int command_selftest(const std::string& fault, const CommonFlags& flags, std::ostream& out,
                     std::ostream& err) {
  if (!fault.empty() &&
      std::find(selftest_names().begin(), selftest_names().end(), fault) == selftest_names().end())
    throw UsageError("unknown check " + fault);
  const auto checks = run_selftest(fault, resolve_workers(flags));
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    char line[96];
    std::snprintf(line, sizeof line, "%-20s %-4s %7.2fs  ", c.name.c_str(), c.passed ? "ok" : "FAIL",
                  c.seconds);
    out << line << c.detail << '\n';
    if (!c.passed) failed.push_back(c.name);
  }
  if (failed.empty()) return kExitOk;
  for (const auto& name : failed) err << "selftest: check failed: " << name << '\n';
  return kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arm events and exponents of critical site percolation on the triangular lattice",
               "perc"};
  app.require_subcommand(1);
  CommonFlags flags;

  int j = 1;
  double r = 4.0;
  std::vector<double> radii;
  auto* halfplane = app.add_subcommand("halfplane", "Half-plane j-arm sweep and exponent fit");
  halfplane->add_option("--j", j, "Number of blue arms")->check(CLI::Range(1, 16));
  halfplane->add_option("--r", r, "Inner radius")->check(CLI::PositiveNumber);
  halfplane->add_option("--R", radii, "Outer radii, comma separated")->delimiter(',');
  add_common(halfplane, flags);

  std::string mode = "polychromatic";
  auto* plane = app.add_subcommand("plane", "Whole-plane j-arm sweep and exponent fit");
  plane->add_option("--j", j, "Number of arms")->check(CLI::Range(2, 16));
  plane->add_option("--mode", mode, "polychromatic | clusters | ep")
      ->check(CLI::IsMember({"polychromatic", "clusters", "ep"}));
  plane->add_option("--r", r, "Inner radius")->check(CLI::PositiveNumber);
  plane->add_option("--R", radii, "Outer radii, comma separated")->delimiter(',');
  add_common(plane, flags);

  std::string algorithm = "clusters";
  auto* onearm = app.add_subcommand("onearm", "One-arm sweep on Annulus(2, R)");
  onearm->add_option("--algorithm", algorithm, "clusters | nested")
      ->check(CLI::IsMember({"clusters", "nested"}));
  onearm->add_option("--R", radii, "Outer radii, comma separated")->delimiter(',');
  add_common(onearm, flags);

  std::vector<double> ps;
  double L = 256;
  auto* nearcrit = app.add_subcommand("nearcrit", "Near-critical theta, chi, xi on Disc(L)");
  nearcrit->add_option("--p", ps, "Values of p above 1/2, comma separated")->delimiter(',');
  nearcrit->add_option("--L", L, "Disc radius");
  add_common(nearcrit, flags);

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Exact oracle checks");
  selftest->add_option("--workers", flags.workers, "Worker threads");
  selftest->add_option("--inject-fault", fault)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*halfplane) {
      if (radii.empty()) radii = {16, 32, 64, 128};
      return command_halfplane(j, r, radii, flags, out, err);
    }
    if (*plane) {
      if (plane->count("--j") == 0) j = 2;
      if (plane->count("--r") == 0) r = 2.0;
      if (radii.empty()) radii = {8, 16, 32, 64};
      return command_plane(j, mode, r, radii, flags, out, err);
    }
    if (*onearm) {
      if (radii.empty()) radii = {8, 16, 32, 64};
      return command_onearm(algorithm, radii, flags, out, err);
    }
    if (*nearcrit) {
      if (ps.empty()) ps = {0.53, 0.56, 0.60, 0.66, 0.72};
      if (nearcrit->count("--trials") == 0) flags.trials = 2000;
      return command_nearcrit(ps, L, flags, out, err);
    }
    return command_selftest(fault, flags, out, err);
  } catch (const BudgetExceeded& e) {
    err << "perc: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "perc: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace perc
