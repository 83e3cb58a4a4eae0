#ifndef DECONF_SCENARIO_HPP_
#define DECONF_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "deconf/kinematics.hpp"

namespace deconf {

/// Seeded 64-bit stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; uniform doubles take the top 53
/// bits. Independent streams use seed ^ index.
class Rng {
 public:
   explicit Rng(std::uint64_t seed) : engine_(seed) {}

   static Rng stream(std::uint64_t base_seed, std::uint64_t index) {
      return Rng(base_seed ^ index);
   }

   std::uint64_t next() { return engine_(); }
   /// Uniform in [0, 1).
   double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
   double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
   std::mt19937_64 engine_;
};

/// Square airspace with vertiports on its boundary.
struct AirspaceConfig {
   double side = 20.0;          ///< [m]
   double h = 1.5;              ///< [m]
   double speed_min = 0.66;     ///< [m/s]
   double speed_max = 1.89;     ///< [m/s]
   std::size_t n_agents = 4;
   std::uint64_t seed = 0;
   std::size_t attempt_budget = 10000;

   void validate() const;
};

/// Point at arc length `u` along the boundary of [0, side]^2, counter-
/// clockwise from the origin.
Vec2 perimeter_point(double side, double u);

/// True when the open segments properly cross (touching does not count).
bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

/// Random missions whose routes all pairwise cross. Vertiports are 2N
/// distinct boundary points at least h apart. Throws
/// TopologyRejectionExhausted after `attempt_budget` placements.
std::vector<Mission> generate_topology(const AirspaceConfig& cfg);

enum class SampleMode { Optimal, Pooled };

const char* to_string(SampleMode mode) noexcept;
SampleMode parse_sample_mode(const std::string& text);

struct DelaySample {
   std::size_t n_agents = 0;
   std::size_t topology_index = 0;
   std::optional<std::uint64_t> order_rank;  ///< pooled mode only
   double average_delay = 0.0;               ///< [s]
};

struct RejectedTopology {
   std::size_t topology_index;
   std::string reason;
};

struct MonteCarloOptions {
   SampleMode mode = SampleMode::Pooled;
   unsigned workers = 1;
   /// Geometry and speeds; n_agents and seed are overridden per topology.
   AirspaceConfig airspace;
};

struct MonteCarloResult {
   std::vector<DelaySample> samples;  ///< sorted by (topology, rank)
   std::vector<RejectedTopology> rejected;
};

/// Topology k uses seed base_seed ^ k. Optimal mode records the best
/// order's average delay per topology; pooled mode records every order.
MonteCarloResult run_monte_carlo(std::size_t n_agents, std::size_t n_topologies,
                                 std::uint64_t base_seed,
                                 const MonteCarloOptions& opts = {});

}  // namespace deconf

#endif  // DECONF_SCENARIO_HPP_
