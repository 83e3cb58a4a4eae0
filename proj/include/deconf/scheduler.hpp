#ifndef DECONF_SCHEDULER_HPP_
#define DECONF_SCHEDULER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "deconf/interval_set.hpp"
#include "deconf/kinematics.hpp"

namespace deconf {

/// Departure times assigned to a flight order.
struct Schedule {
   struct Entry {
      std::string mission_id;
      double departure = 0.0;  ///< seconds after the first departure
      /// Earlier missions whose forbidden interval ends exactly at
      /// `departure`, i.e. the constraints that fixed this time.
      std::vector<std::string> bindings;
   };

   std::vector<Entry> entries;  ///< in processing order

   std::vector<std::string> order() const;
   double total_delay() const;
   const Entry& at(const std::string& mission_id) const;
};

/// Forbidden intervals for every ordered pair of a mission set, computed once
/// and shared by all flight orders.
class PairTable {
 public:
   PairTable(std::vector<Mission> missions, const SeparationConfig& cfg);

   std::size_t size() const noexcept { return missions_.size(); }
   const std::vector<Mission>& missions() const noexcept { return missions_; }
   const SeparationConfig& config() const noexcept { return cfg_; }

   /// forbidden_interval(missions[first], missions[second]).
   const ForbiddenInterval& at(std::size_t first, std::size_t second) const {
      return intervals_[first * missions_.size() + second];
   }

   /// Sum of durations plus the summed forbidden widths of all unordered
   /// pairs plus one second. Every agent finds a feasible slot below it.
   double sufficient_horizon() const noexcept { return horizon_; }

 private:
   std::vector<Mission> missions_;
   SeparationConfig cfg_;
   std::vector<ForbiddenInterval> intervals_;
   double horizon_ = 0.0;
};

/// Earliest-feasible departures for `order` (indices into the table's
/// missions), written to `departures` in processing order. Throws
/// EmptyFeasibleSet naming the first agent left without a slot.
void greedy_departures(const PairTable& table, std::span<const std::size_t> order,
                       double horizon, std::span<double> departures);

/// Full schedule, including binding constraints, for `order`.
Schedule greedy_schedule(const PairTable& table, std::span<const std::size_t> order,
                         double horizon);

/// Schedules `order` as given: each agent takes the earliest instant of
/// [0, horizon] outside every earlier agent's shifted forbidden interval.
Schedule greedy_schedule(std::span<const Mission> order, const SeparationConfig& cfg,
                         double horizon);

/// Convenience overload using the table's sufficient horizon.
Schedule greedy_schedule(std::span<const Mission> order, const SeparationConfig& cfg);

}  // namespace deconf

#endif  // DECONF_SCHEDULER_HPP_
