#include "deconf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "deconf/errors.hpp"
#include "deconf/geo.hpp"
#include "deconf/report.hpp"
#include "deconf/scenario.hpp"
#include "deconf/statfit.hpp"

namespace deconf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
   fs::create_directories(dir);
   std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
   if (!f) {
      throw Error("cannot write " + (dir / name).string());
   }
   f << content;
}

std::string read_file(const fs::path& path) {
   std::ifstream f(path, std::ios::binary);
   if (!f) {
      throw InvalidArgument(path.string() + ": cannot open");
   }
   std::ostringstream buf;
   buf << f.rdbuf();
   return buf.str();
}

std::string fixed(double v, int digits = 4) {
   std::ostringstream s;
   s << std::fixed << std::setprecision(digits) << v;
   return s.str();
}

std::string join(const std::vector<std::string>& ids, const char* sep = ",") {
   std::string out;
   for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out += sep;
      out += ids[i];
   }
   return out;
}

const Mission& find_mission(const std::vector<Mission>& missions, const std::string& id) {
   auto it = std::find_if(missions.begin(), missions.end(),
                          [&](const Mission& m) { return m.id() == id; });
   if (it == missions.end()) {
      throw InvalidArgument("unknown mission id '" + id + "'");
   }
   return *it;
}

double efficiency(double best, double worst) { return worst > 0.0 ? 1.0 - best / worst : 0.0; }

// Flags shared by every subcommand.
struct CommonFlags {
   std::string out_dir = ".";
   unsigned workers = 1;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
   sub->add_option("--out", flags.out_dir, "Directory for CSV/JSON artifacts");
   sub->add_option("--workers", flags.workers, "Worker threads (affects speed only)")
       ->check(CLI::Range(1u, 256u));
}

// --------------------------------------------------------------------------

struct SolvePairFlags {
   CommonFlags common;
   std::string scenario;
   std::string first;
   std::string second;
   std::optional<double> h;
};

int cmd_solve_pair(const SolvePairFlags& f, std::ostream& out) {
   const ScenarioFile scenario = read_scenario(f.scenario);
   const auto missions = to_missions(scenario);
   const SeparationConfig cfg = separation_config(scenario, f.h);
   const Mission& a = find_mission(missions, f.first);
   const Mission& b = find_mission(missions, f.second);
   const ForbiddenInterval interval = forbidden_interval(a, b, cfg);

   json report{{"first", a.id()}, {"second", b.id()}, {"h_m", cfg.h},
               {"interval", report::to_json(interval)}};
   std::optional<double> cpa;
   try {
      cpa = cpa_time(relative_state(a, b, 0.0));
      report["cpa_time_s"] = *cpa;
   } catch (const DegenerateRelativeVelocity&) {
      report["cpa_time_s"] = nullptr;
   }

   out << "pair " << a.id() << " -> " << b.id() << " (h = " << report::number(cfg.h)
       << " m)\n";
   if (interval.kind == ForbiddenInterval::Kind::Bounded) {
      out << "forbidden delay interval: (" << fixed(interval.lo, 6) << ", "
          << fixed(interval.hi, 6) << ") s\n";
      json ends = json::object();
      for (auto [name, delay] : {std::pair{"lo", interval.lo}, std::pair{"hi", interval.hi}}) {
         const auto d2 = min_separation_sq(a, 0.0, b, delay);
         const double sep = d2 ? std::sqrt(*d2) : std::numeric_limits<double>::infinity();
         ends[name] = d2 ? json(sep) : json(nullptr);
         out << "separation at " << name << ": " << (d2 ? fixed(sep, 6) + " m" : "not co-airborne")
             << "\n";
      }
      report["endpoint_separation_m"] = std::move(ends);
   } else {
      out << "forbidden delay interval: " << to_string(interval.kind) << "\n";
   }
   out << "cpa time at zero delay: " << (cpa ? fixed(*cpa, 6) + " s" : "degenerate (|U| = 0)")
       << "\n";
   write_file(f.common.out_dir, "pair.json", report.dump(2) + "\n");
   return kOk;
}

// --------------------------------------------------------------------------

struct ScheduleFlags {
   CommonFlags common;
   std::string scenario;
   std::vector<std::string> order;
   std::optional<double> h;
};

int cmd_schedule(const ScheduleFlags& f, std::ostream& out) {
   const ScenarioFile scenario = read_scenario(f.scenario);
   const auto missions = to_missions(scenario);
   const SeparationConfig cfg = separation_config(scenario, f.h);
   std::vector<Mission> ordered;
   if (f.order.empty()) {
      ordered = missions;
   } else {
      if (f.order.size() != missions.size()) {
         throw InvalidArgument("--order must list every mission exactly once");
      }
      for (const auto& id : f.order) {
         if (std::any_of(ordered.begin(), ordered.end(),
                         [&](const Mission& m) { return m.id() == id; })) {
            throw InvalidArgument("--order repeats mission '" + id + "'");
         }
         ordered.push_back(find_mission(missions, id));
      }
   }
   const Schedule schedule = greedy_schedule(ordered, cfg);
   out << "order " << join(schedule.order()) << "\n";
   for (const auto& e : schedule.entries) {
      out << "  " << e.mission_id << "  departs " << fixed(e.departure) << " s\n";
   }
   out << "total delay " << fixed(schedule.total_delay()) << " s, average "
       << fixed(average_delay(schedule)) << " s\n";
   json report = report::to_json(schedule);
   report["average_delay_s"] = average_delay(schedule);
   report["h_m"] = cfg.h;
   write_file(f.common.out_dir, "schedule.json", report.dump(2) + "\n");
   write_file(f.common.out_dir, "schedule.csv", report::schedule_csv(schedule));
   return kOk;
}

// --------------------------------------------------------------------------

struct OptimizeFlags {
   CommonFlags common;
   std::string scenario;
   std::optional<double> h;
};

json search_json(const OrderSearch& search) {
   json tied = json::array();
   for (auto r : search.tied_optima) {
      tied.push_back(search.order_at(r));
   }
   return {{"orders_evaluated", search.evaluated()},
           {"best", report::to_json(search.best)},
           {"worst", report::to_json(search.worst)},
           {"efficiency", efficiency(search.best.total_delay, search.worst.total_delay)},
           {"tied_optima", std::move(tied)}};
}

int cmd_optimize(const OptimizeFlags& f, std::ostream& out) {
   const ScenarioFile scenario = read_scenario(f.scenario);
   const auto missions = to_missions(scenario);
   const SeparationConfig cfg = separation_config(scenario, f.h);
   const OrderSearch search = search_orders(missions, cfg, {.workers = f.common.workers});

   out << "evaluated " << search.evaluated() << " orders\n";
   out << "best order " << join(search.best.order) << "\n";
   for (const auto& e : search.best.schedule.entries) {
      out << "  " << e.mission_id << "  departs " << fixed(e.departure) << " s\n";
   }
   out << "total delay " << fixed(search.best.total_delay) << " s, average "
       << fixed(search.best.average_delay) << " s\n";
   out << "worst order " << join(search.worst.order) << " total "
       << fixed(search.worst.total_delay) << " s\n";
   out << "efficiency " << fixed(efficiency(search.best.total_delay, search.worst.total_delay))
       << "\n";
   json report = search_json(search);
   report["h_m"] = cfg.h;
   write_file(f.common.out_dir, "optimize.json", report.dump(2) + "\n");
   write_file(f.common.out_dir, "orders.csv", report::orders_csv(search));
   return kOk;
}

// --------------------------------------------------------------------------

json fit_all(std::span<const double> samples, std::size_t bins) {
   std::vector<statfit::FitResult> fits;
   json failures = json::object();
   for (statfit::Family family : statfit::kAllFamilies) {
      try {
         fits.push_back(statfit::fit(samples, family, bins));
      } catch (const DomainError& e) {
         failures[statfit::to_string(family)] = e.what();
      } catch (const NonConvergence& e) {
         failures[statfit::to_string(family)] = e.what();
      }
   }
   if (fits.empty()) {
      throw DomainError("no distribution family could be fitted");
   }
   const auto best = std::min_element(fits.begin(), fits.end(), [](const auto& a, const auto& b) {
      return a.ssr < b.ssr;
   });
   json report = report::fit_report(*best, fits);
   report["samples"] = samples.size();
   report["failed"] = std::move(failures);
   return report;
}

void print_fit(const json& report, std::ostream& out) {
   for (const auto& c : report["candidates"]) {
      out << "  " << std::left << std::setw(10) << c["family"].get<std::string>()
          << " ssr " << std::setprecision(8) << c["ssr"].get<double>() << "\n";
   }
   out << "best fit: " << report["best"]["family"].get<std::string>() << "\n";
}

struct MonteCarloFlags {
   CommonFlags common;
   std::size_t agents = 4;
   std::size_t topologies = 100;
   std::uint64_t seed = 0;
   std::string mode = "pooled";
   std::size_t bins = statfit::kDefaultBins;
   double h = 1.5;
};

int cmd_montecarlo(const MonteCarloFlags& f, std::ostream& out, std::ostream& err) {
   MonteCarloOptions opts;
   opts.mode = parse_sample_mode(f.mode);
   opts.workers = f.common.workers;
   opts.airspace.h = f.h;
   const MonteCarloResult result = run_monte_carlo(f.agents, f.topologies, f.seed, opts);
   for (const auto& r : result.rejected) {
      err << "topology " << r.topology_index << " skipped: " << r.reason << "\n";
   }
   write_file(f.common.out_dir, "samples.csv", report::samples_csv(result.samples, opts.mode));

   std::vector<double> values;
   values.reserve(result.samples.size());
   for (const auto& s : result.samples) {
      values.push_back(s.average_delay);
   }
   double mean = 0.0;
   for (double v : values) mean += v;
   mean /= static_cast<double>(std::max<std::size_t>(values.size(), 1));
   double var = 0.0;
   for (double v : values) var += (v - mean) * (v - mean);
   const double sd = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;

   out << f.agents << " agents, " << f.topologies << " topologies (" << result.rejected.size()
       << " skipped), mode " << to_string(opts.mode) << ": " << values.size() << " samples\n";
   out << "mean average delay " << fixed(mean) << " s, std " << fixed(sd) << " s\n";

   json fit = fit_all(values, f.bins);
   fit["n_agents"] = f.agents;
   fit["topologies"] = f.topologies;
   fit["skipped_topologies"] = result.rejected.size();
   fit["mode"] = to_string(opts.mode);
   fit["seed"] = f.seed;
   fit["mean_s"] = mean;
   fit["std_s"] = sd;
   print_fit(fit, out);
   write_file(f.common.out_dir, "fit.json", fit.dump(2) + "\n");
   return kOk;
}

struct FitFlags {
   CommonFlags common;
   std::string samples;
   std::size_t bins = statfit::kDefaultBins;
};

int cmd_fit(const FitFlags& f, std::ostream& out) {
   const auto values = report::parse_samples_csv(read_file(f.samples));
   json fit = fit_all(values, f.bins);
   out << values.size() << " samples\n";
   print_fit(fit, out);
   write_file(f.common.out_dir, "fit.json", fit.dump(2) + "\n");
   return kOk;
}

// --------------------------------------------------------------------------

struct CaseStudyFlags {
   CommonFlags common;
   double h = 0.0;
};

int cmd_casestudy(const CaseStudyFlags& f, std::ostream& out) {
   const CaseStudyReport rep = run_casestudy(f.h, f.common.workers);
   out << "Greater Atlanta case study, h = " << report::number(f.h) << " m, "
       << rep.search.evaluated() << " orders evaluated\n";
   out << "best order " << join(rep.search.best.order) << "\n";
   for (const auto& e : rep.search.best.schedule.entries) {
      const auto& routes = atlanta_routes();
      auto route = std::find_if(routes.begin(), routes.end(),
                                [&](const CaseStudyRoute& r) { return e.mission_id == r.flight; });
      out << "  flight " << e.mission_id << "  " << route->from << "-" << route->to
          << "  departs " << fixed(geo::seconds_to_minutes(e.departure), 2) << " min\n";
   }
   out << "best total " << fixed(rep.best_total_min) << " min, average "
       << fixed(rep.best_average_min) << " min\n";
   out << "worst total " << fixed(rep.worst_total_min) << " min ("
       << join(rep.search.worst.order) << ")\n";
   out << "efficiency " << fixed(100.0 * rep.efficiency, 1) << " %\n";
   out << "orders tied at the optimum:";
   for (const auto& o : rep.tied_orders) {
      out << " [" << join(o) << "]";
   }
   out << "\n";

   json report = search_json(rep.search);
   report["h_m"] = f.h;
   report["best_total_min"] = rep.best_total_min;
   report["worst_total_min"] = rep.worst_total_min;
   report["best_average_min"] = rep.best_average_min;
   json departures = json::object();
   for (const auto& e : rep.search.best.schedule.entries) {
      departures[e.mission_id] = geo::seconds_to_minutes(e.departure);
   }
   report["best_departures_min"] = std::move(departures);
   write_file(f.common.out_dir, "casestudy.json", report.dump(2) + "\n");
   return kOk;
}

}  // namespace

int exit_code_for_current_exception(std::ostream& err) {
   try {
      throw;
   } catch (const EmptyFeasibleSet& e) {
      err << "infeasible: " << e.what() << "\n";
      return kInfeasible;
   } catch (const UnresolvablePair& e) {
      err << "infeasible: " << e.what() << "\n";
      return kInfeasible;
   } catch (const TopologyRejectionExhausted& e) {
      err << "infeasible: " << e.what() << "\n";
      return kInfeasible;
   } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
   } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
   } catch (const DegenerateSamples& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
   } catch (const TooManyAgents& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
   } catch (const OutOfProjectionRange& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidInput;
   } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kInternal;
   } catch (...) {
      err << "internal error\n";
      return kInternal;
   }
}

const std::vector<CaseStudyRoute>& atlanta_routes() {
   static const std::vector<CaseStudyRoute> routes{
       {"01", "9GE8", "GA66"},
       {"02", "FTY", "7GA6"},
       {"03", "ATL", "GA54"},
       {"04", "73GA", "52GA2"},
   };
   return routes;
}

ScenarioFile atlanta_scenario(double h) {
   ScenarioFile s;
   s.units = Units::Geodetic;
   s.separation_h = h;
   s.missions = {
       {"01", {33.741, -84.513}, {33.810, -84.395}, 60.7},
       {"02", {33.779, -84.521}, {33.762, -84.396}, 55.5},
       {"03", {33.637, -84.428}, {33.901, -84.468}, 62.4},
       {"04", {33.883, -84.436}, {33.538, -84.474}, 62.4},
   };
   return s;
}

CaseStudyReport run_casestudy(double h, unsigned workers) {
   const ScenarioFile scenario = atlanta_scenario(h);
   CaseStudyReport rep;
   rep.h = h;
   rep.search = search_orders(to_missions(scenario), separation_config(scenario),
                              {.workers = workers});
   rep.best_total_min = geo::seconds_to_minutes(rep.search.best.total_delay);
   rep.worst_total_min = geo::seconds_to_minutes(rep.search.worst.total_delay);
   rep.best_average_min = geo::seconds_to_minutes(rep.search.best.average_delay);
   rep.efficiency = efficiency(rep.search.best.total_delay, rep.search.worst.total_delay);
   for (auto r : rep.search.tied_optima) {
      rep.tied_orders.push_back(rep.search.order_at(r));
   }
   return rep;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
   CLI::App app{"Conflict-free departure scheduling for constant-velocity agents", "deconf"};
   app.require_subcommand(1);
   // `--h` is the separation radius, so help is long-form only.
   app.set_help_flag("--help", "Print this help message and exit");

   SolvePairFlags pair;
   auto* sp = app.add_subcommand("solve-pair", "Forbidden delay interval for one ordered pair");
   sp->add_option("--scenario", pair.scenario, "Scenario JSON")->required();
   sp->add_option("--first", pair.first, "Mission departing first")->required();
   sp->add_option("--second", pair.second, "Mission departing second")->required();
   sp->add_option("--h", pair.h, "Override separation radius [m]")->check(CLI::PositiveNumber);
   add_common(sp, pair.common);

   ScheduleFlags sched;
   auto* sc = app.add_subcommand("schedule", "Greedy schedule for one flight order");
   sc->add_option("--scenario", sched.scenario, "Scenario JSON")->required();
   sc->add_option("--order", sched.order, "Flight order (comma separated ids)")->delimiter(',');
   sc->add_option("--h", sched.h, "Override separation radius [m]")->check(CLI::PositiveNumber);
   add_common(sc, sched.common);

   OptimizeFlags opt;
   auto* op = app.add_subcommand("optimize", "Best flight order by total delay");
   op->add_option("--scenario", opt.scenario, "Scenario JSON")->required();
   op->add_option("--h", opt.h, "Override separation radius [m]")->check(CLI::PositiveNumber);
   add_common(op, opt.common);

   MonteCarloFlags mc;
   auto* mcs = app.add_subcommand("montecarlo", "Average-delay samples over random topologies");
   mcs->add_option("--agents", mc.agents, "Agents per topology")->check(CLI::Range(2, 9));
   mcs->add_option("--topologies", mc.topologies, "Number of topologies");
   mcs->add_option("--seed", mc.seed, "Base seed");
   mcs->add_option("--mode", mc.mode, "optimal | pooled")
       ->check(CLI::IsMember({"optimal", "pooled"}));
   mcs->add_option("--bins", mc.bins, "Histogram bins for fitting")->check(CLI::Range(2, 100000));
   mcs->add_option("--h", mc.h, "Separation radius [m]")->check(CLI::PositiveNumber);
   add_common(mcs, mc.common);

   FitFlags fitf;
   auto* fs_ = app.add_subcommand("fit", "Fit distributions to a samples CSV");
   fs_->add_option("--samples", fitf.samples, "CSV with an average_delay_s column")->required();
   fs_->add_option("--bins", fitf.bins, "Histogram bins")->check(CLI::Range(2, 100000));
   add_common(fs_, fitf.common);

   CaseStudyFlags cs;
   auto* css = app.add_subcommand("casestudy", "Greater Atlanta four-flight case study");
   css->add_option("--h", cs.h, "Separation radius [m]")->required()->check(CLI::PositiveNumber);
   add_common(css, cs.common);

   std::vector<const char*> argv;
   argv.reserve(args.size());
   for (const auto& a : args) {
      argv.push_back(a.c_str());
   }
   try {
      app.parse(static_cast<int>(argv.size()), argv.data());
   } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kInvalidInput;
   }

   try {
      if (*sp) return cmd_solve_pair(pair, out);
      if (*sc) return cmd_schedule(sched, out);
      if (*op) return cmd_optimize(opt, out);
      if (*mcs) return cmd_montecarlo(mc, out, err);
      if (*fs_) return cmd_fit(fitf, out);
      if (*css) return cmd_casestudy(cs, out);
   } catch (...) {
      return exit_code_for_current_exception(err);
   }
   return kInternal;
}

}  // namespace deconf::cli
