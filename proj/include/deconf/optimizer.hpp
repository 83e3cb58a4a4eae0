#ifndef DECONF_OPTIMIZER_HPP_
#define DECONF_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deconf/kinematics.hpp"
#include "deconf/scheduler.hpp"

namespace deconf {

struct OrderResult {
   std::vector<std::string> order;
   Schedule schedule;
   double total_delay = 0.0;
   double average_delay = 0.0;
};

struct OptimizerOptions {
   std::size_t max_agents = 9;
   unsigned workers = 1;
};

/// Totals of every flight order plus the extreme orders.
///
/// Orders are ranked lexicographically by mission id: rank 0 is the ids
/// sorted ascending, rank N!-1 the ids sorted descending.
struct OrderSearch {
   std::vector<std::string> sorted_ids;
   std::vector<double> total_delays;  ///< indexed by rank
   OrderResult best;                  ///< lowest total, smallest rank on ties
   OrderResult worst;                 ///< highest total, smallest rank on ties
   std::vector<std::uint64_t> tied_optima;  ///< every rank tied with `best`

   std::size_t evaluated() const noexcept { return total_delays.size(); }
   std::vector<std::string> order_at(std::uint64_t rank) const;
};

/// Mean departure delay of a schedule. Throws InvalidArgument when empty.
double average_delay(const Schedule& schedule);

std::uint64_t factorial(std::size_t n);

/// The rank-th permutation of {0..n-1} in lexicographic order.
std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t rank);

/// Two totals within this distance are treated as the same optimum.
double tie_tolerance(double total);

/// Evaluates all N! orders with the greedy scheduler. Throws TooManyAgents
/// above `opts.max_agents`. Result is independent of `opts.workers`.
OrderSearch search_orders(std::span<const Mission> missions, const SeparationConfig& cfg,
                          const OptimizerOptions& opts = {});

/// Order minimizing total delay; ties go to the lexicographically smallest
/// order of mission ids.
OrderResult optimize_order(std::span<const Mission> missions, const SeparationConfig& cfg,
                           const OptimizerOptions& opts = {});

/// One row per order, lexicographic by mission id.
std::vector<OrderResult> per_order_table(std::span<const Mission> missions,
                                         const SeparationConfig& cfg,
                                         const OptimizerOptions& opts = {});

}  // namespace deconf

#endif  // DECONF_OPTIMIZER_HPP_
