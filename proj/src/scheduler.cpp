#include "deconf/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "deconf/errors.hpp"

namespace deconf {

namespace {

// Two departures closer than this are the same instant for binding purposes.
double binding_tolerance(double horizon) { return 1e-9 * std::max(1.0, horizon); }

}  // namespace

std::vector<std::string> Schedule::order() const {
   std::vector<std::string> ids;
   ids.reserve(entries.size());
   for (const Entry& e : entries) {
      ids.push_back(e.mission_id);
   }
   return ids;
}

double Schedule::total_delay() const {
   double total = 0.0;
   for (const Entry& e : entries) {
      total += e.departure;
   }
   return total;
}

const Schedule::Entry& Schedule::at(const std::string& mission_id) const {
   auto it = std::find_if(entries.begin(), entries.end(),
                          [&](const Entry& e) { return e.mission_id == mission_id; });
   if (it == entries.end()) {
      throw InvalidArgument("schedule has no mission '" + mission_id + "'");
   }
   return *it;
}

PairTable::PairTable(std::vector<Mission> missions, const SeparationConfig& cfg)
    : missions_(std::move(missions)), cfg_(cfg) {
   cfg_.validate();
   std::unordered_set<std::string> ids;
   for (const Mission& m : missions_) {
      if (!ids.insert(m.id()).second) {
         throw InvalidArgument("duplicate mission id '" + m.id() + "'");
      }
   }
   const std::size_t n = missions_.size();
   intervals_.resize(n * n);
   horizon_ = 1.0;
   for (std::size_t i = 0; i < n; ++i) {
      horizon_ += missions_[i].duration();
      for (std::size_t j = 0; j < n; ++j) {
         if (i == j) {
            continue;
         }
         intervals_[i * n + j] = forbidden_interval(missions_[i], missions_[j], cfg_);
         if (intervals_[i * n + j].kind == ForbiddenInterval::Kind::Unbounded) {
            throw UnresolvablePair(missions_[i].id(), missions_[j].id());
         }
         if (i < j) {
            horizon_ += std::max(0.0, intervals_[i * n + j].width());
         }
      }
   }
}

void greedy_departures(const PairTable& table, std::span<const std::size_t> order,
                       double horizon, std::span<double> departures) {
   if (!(horizon > 0.0)) {
      throw InvalidArgument("horizon must be positive");
   }
   if (departures.size() < order.size()) {
      throw InvalidArgument("departure buffer too small");
   }
   const IntervalSet full = IntervalSet::closed(0.0, horizon);
   for (std::size_t k = 0; k < order.size(); ++k) {
      IntervalSet workspace = full;
      for (std::size_t i = 0; i < k; ++i) {
         const ForbiddenInterval& f = table.at(order[i], order[k]);
         if (f.kind == ForbiddenInterval::Kind::Bounded) {
            workspace = workspace.subtract(departures[i] + f.lo, departures[i] + f.hi);
         }
      }
      if (workspace.empty()) {
         throw EmptyFeasibleSet(table.missions()[order[k]].id());
      }
      departures[k] = workspace.earliest();
   }
}

Schedule greedy_schedule(const PairTable& table, std::span<const std::size_t> order,
                         double horizon) {
   std::vector<double> departures(order.size());
   greedy_departures(table, order, horizon, departures);

   const double eps = binding_tolerance(horizon);
   Schedule schedule;
   schedule.entries.reserve(order.size());
   for (std::size_t k = 0; k < order.size(); ++k) {
      Schedule::Entry entry{table.missions()[order[k]].id(), departures[k], {}};
      if (departures[k] > 0.0) {
         for (std::size_t i = 0; i < k; ++i) {
            const ForbiddenInterval& f = table.at(order[i], order[k]);
            if (f.kind == ForbiddenInterval::Kind::Bounded &&
                std::abs(departures[i] + f.hi - departures[k]) <= eps) {
               entry.bindings.push_back(table.missions()[order[i]].id());
            }
         }
      }
      schedule.entries.push_back(std::move(entry));
   }
   return schedule;
}

Schedule greedy_schedule(std::span<const Mission> order, const SeparationConfig& cfg,
                         double horizon) {
   const PairTable table({order.begin(), order.end()}, cfg);
   std::vector<std::size_t> identity(order.size());
   std::iota(identity.begin(), identity.end(), std::size_t{0});
   return greedy_schedule(table, identity, horizon);
}

Schedule greedy_schedule(std::span<const Mission> order, const SeparationConfig& cfg) {
   const PairTable table({order.begin(), order.end()}, cfg);
   std::vector<std::size_t> identity(order.size());
   std::iota(identity.begin(), identity.end(), std::size_t{0});
   return greedy_schedule(table, identity, table.sufficient_horizon());
}

}  // namespace deconf
