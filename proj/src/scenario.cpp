#include "deconf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "deconf/errors.hpp"
#include "deconf/optimizer.hpp"

namespace deconf {

namespace {

std::string agent_id(std::size_t index, std::size_t count) {
   if (count <= 26) {
      return std::string(1, static_cast<char>('A' + index));
   }
   std::string digits = std::to_string(index + 1);
   const std::size_t width = std::to_string(count).size();
   return "M" + std::string(width - digits.size(), '0') + digits;
}

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

struct TopologyOutcome {
   std::vector<DelaySample> samples;
   std::optional<std::string> rejection;
};

TopologyOutcome run_topology(std::size_t n_agents, std::size_t index,
                             std::uint64_t base_seed, const MonteCarloOptions& opts) {
   AirspaceConfig cfg = opts.airspace;
   cfg.n_agents = n_agents;
   cfg.seed = base_seed ^ static_cast<std::uint64_t>(index);
   TopologyOutcome out;
   std::vector<Mission> missions;
   try {
      missions = generate_topology(cfg);
   } catch (const TopologyRejectionExhausted& e) {
      out.rejection = e.what();
      return out;
   }
   const SeparationConfig sep{cfg.h};
   const OrderSearch search = search_orders(missions, sep, {.max_agents = 9, .workers = 1});
   const double n = static_cast<double>(n_agents);
   if (opts.mode == SampleMode::Optimal) {
      out.samples.push_back({n_agents, index, std::nullopt, search.best.average_delay});
   } else {
      out.samples.reserve(search.total_delays.size());
      for (std::uint64_t r = 0; r < search.total_delays.size(); ++r) {
         out.samples.push_back({n_agents, index, r, search.total_delays[r] / n});
      }
   }
   return out;
}

}  // namespace

void AirspaceConfig::validate() const {
   auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
   if (!positive(side) || !positive(h)) {
      throw InvalidArgument("airspace side and h must be positive");
   }
   if (!positive(speed_min) || !std::isfinite(speed_max) || speed_min > speed_max) {
      throw InvalidArgument("speed range must satisfy 0 < min <= max");
   }
   if (n_agents < 1) {
      throw InvalidArgument("airspace needs at least one agent");
   }
   if (2.0 * static_cast<double>(n_agents) * h > 4.0 * side) {
      throw InvalidArgument("perimeter too short for " + std::to_string(2 * n_agents) +
                            " vertiports spaced by h");
   }
   if (attempt_budget == 0) {
      throw InvalidArgument("attempt budget must be positive");
   }
}

Vec2 perimeter_point(double side, double u) {
   const double perimeter = 4.0 * side;
   u = std::fmod(u, perimeter);
   if (u < 0.0) {
      u += perimeter;
   }
   if (u < side) return {u, 0.0};
   if (u < 2.0 * side) return {side, u - side};
   if (u < 3.0 * side) return {3.0 * side - u, side};
   return {0.0, perimeter - u};
}

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
   const double d1 = orient(p1, p2, q1);
   const double d2 = orient(p1, p2, q2);
   const double d3 = orient(q1, q2, p1);
   const double d4 = orient(q1, q2, p2);
   return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
          ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

std::vector<Mission> generate_topology(const AirspaceConfig& cfg) {
   cfg.validate();
   const std::size_t n = cfg.n_agents;
   Rng rng(cfg.seed);
   std::vector<double> arc(2 * n);

   for (std::size_t attempt = 0; attempt < cfg.attempt_budget; ++attempt) {
      for (double& u : arc) {
         u = rng.uniform(0.0, 4.0 * cfg.side);
      }
      std::sort(arc.begin(), arc.end());
      std::vector<Vec2> ports(2 * n);
      std::transform(arc.begin(), arc.end(), ports.begin(),
                     [&](double u) { return perimeter_point(cfg.side, u); });

      bool spaced = true;
      for (std::size_t i = 0; i < ports.size() && spaced; ++i) {
         for (std::size_t j = i + 1; j < ports.size(); ++j) {
            if (norm(ports[i] - ports[j]) < cfg.h) {
               spaced = false;
               break;
            }
         }
      }

      if (!spaced) {
         continue;
      }

      // Chords between boundary points in convex position all cross only
      // when each point is joined to the one N places further around, so
      // this is the single pairing a rejection sampler could accept.
      std::vector<Mission> missions;
      missions.reserve(n);
      for (std::size_t k = 0; k < n; ++k) {
         Vec2 from = ports[k];
         Vec2 to = ports[k + n];
         if (rng.uniform() < 0.5) {
            std::swap(from, to);
         }
         missions.emplace_back(agent_id(k, n), from, to,
                               rng.uniform(cfg.speed_min, cfg.speed_max));
      }

      bool all_cross = true;
      for (std::size_t i = 0; i < n && all_cross; ++i) {
         for (std::size_t j = i + 1; j < n; ++j) {
            if (!segments_cross(missions[i].origin(), missions[i].destination(),
                                missions[j].origin(), missions[j].destination())) {
               all_cross = false;
               break;
            }
         }
      }
      if (all_cross) {
         return missions;
      }
   }
   throw TopologyRejectionExhausted("no mutually crossing topology for " +
                                    std::to_string(n) + " agents after " +
                                    std::to_string(cfg.attempt_budget) + " attempts");
}

const char* to_string(SampleMode mode) noexcept {
   return mode == SampleMode::Optimal ? "optimal" : "pooled";
}

SampleMode parse_sample_mode(const std::string& text) {
   if (text == "optimal") return SampleMode::Optimal;
   if (text == "pooled") return SampleMode::Pooled;
   throw InvalidArgument("unknown sample mode '" + text + "' (optimal|pooled)");
}

MonteCarloResult run_monte_carlo(std::size_t n_agents, std::size_t n_topologies,
                                 std::uint64_t base_seed, const MonteCarloOptions& opts) {
   if (n_agents < 2 || n_agents > 9) {
      throw InvalidArgument("n_agents must be in [2, 9]");
   }
   AirspaceConfig probe = opts.airspace;
   probe.n_agents = n_agents;
   probe.validate();

   std::vector<TopologyOutcome> outcomes(n_topologies);
   const unsigned workers = static_cast<unsigned>(
       std::clamp<std::size_t>(opts.workers, 1, std::max<std::size_t>(n_topologies, 1)));
   auto run_block = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
         outcomes[k] = run_topology(n_agents, k, base_seed, opts);
      }
   };
   if (workers == 1) {
      run_block(0, n_topologies);
   } else {
      std::vector<std::exception_ptr> errors(workers);
      {
         std::vector<std::jthread> pool;
         for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
               try {
                  run_block(n_topologies * w / workers, n_topologies * (w + 1) / workers);
               } catch (...) {
                  errors[w] = std::current_exception();
               }
            });
         }
      }
      for (const auto& e : errors) {
         if (e) {
            std::rethrow_exception(e);
         }
      }
   }

   MonteCarloResult result;
   for (std::size_t k = 0; k < n_topologies; ++k) {
      if (outcomes[k].rejection) {
         result.rejected.push_back({k, *outcomes[k].rejection});
         continue;
      }
      result.samples.insert(result.samples.end(), outcomes[k].samples.begin(),
                            outcomes[k].samples.end());
   }
   return result;
}

}  // namespace deconf
