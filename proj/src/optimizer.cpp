#include "deconf/optimizer.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <thread>

#include "deconf/errors.hpp"

namespace deconf {

namespace {

// Missions sorted by id so that index permutations enumerate id orders
// lexicographically.
std::vector<Mission> sorted_by_id(std::span<const Mission> missions) {
   std::vector<Mission> sorted(missions.begin(), missions.end());
   std::stable_sort(sorted.begin(), sorted.end(),
                    [](const Mission& a, const Mission& b) { return a.id() < b.id(); });
   return sorted;
}

void check_size(std::size_t n, const OptimizerOptions& opts) {
   if (n == 0) {
      throw InvalidArgument("optimizer needs at least one mission");
   }
   if (n > opts.max_agents || n > 20) {
      throw TooManyAgents("exhaustive order search is capped at " +
                          std::to_string(opts.max_agents) + " agents, got " +
                          std::to_string(n));
   }
}

OrderResult make_result(const PairTable& table, std::uint64_t rank) {
   const auto order = permutation_at(table.size(), rank);
   OrderResult r;
   r.schedule = greedy_schedule(table, order, table.sufficient_horizon());
   r.order = r.schedule.order();
   r.total_delay = r.schedule.total_delay();
   r.average_delay = r.total_delay / static_cast<double>(order.size());
   return r;
}

// Evaluates ranks [begin, end) into totals. Each worker owns a contiguous
// block, so the written values do not depend on the worker count.
void evaluate_block(const PairTable& table, std::uint64_t begin, std::uint64_t end,
                    std::span<double> totals) {
   if (begin >= end) {
      return;
   }
   auto order = permutation_at(table.size(), begin);
   std::vector<double> departures(order.size());
   const double horizon = table.sufficient_horizon();
   for (std::uint64_t rank = begin; rank < end; ++rank) {
      greedy_departures(table, order, horizon, departures);
      totals[rank] = std::accumulate(departures.begin(), departures.end(), 0.0);
      std::next_permutation(order.begin(), order.end());
   }
}

}  // namespace

std::vector<std::string> OrderSearch::order_at(std::uint64_t rank) const {
   std::vector<std::string> ids;
   for (std::size_t idx : permutation_at(sorted_ids.size(), rank)) {
      ids.push_back(sorted_ids[idx]);
   }
   return ids;
}

double average_delay(const Schedule& schedule) {
   if (schedule.entries.empty()) {
      throw InvalidArgument("average delay of an empty schedule");
   }
   return schedule.total_delay() / static_cast<double>(schedule.entries.size());
}

std::uint64_t factorial(std::size_t n) {
   std::uint64_t f = 1;
   for (std::size_t k = 2; k <= n; ++k) {
      f *= k;
   }
   return f;
}

std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t rank) {
   std::vector<std::size_t> pool(n);
   std::iota(pool.begin(), pool.end(), std::size_t{0});
   std::vector<std::size_t> perm;
   perm.reserve(n);
   for (std::size_t k = n; k > 0; --k) {
      const std::uint64_t block = factorial(k - 1);
      const auto pick = static_cast<std::size_t>(rank / block);
      rank %= block;
      perm.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
   }
   return perm;
}

double tie_tolerance(double total) { return 1e-9 * std::max(1.0, std::abs(total)); }

OrderSearch search_orders(std::span<const Mission> missions, const SeparationConfig& cfg,
                          const OptimizerOptions& opts) {
   check_size(missions.size(), opts);
   const PairTable table(sorted_by_id(missions), cfg);
   const std::uint64_t count = factorial(table.size());

   OrderSearch search;
   for (const Mission& m : table.missions()) {
      search.sorted_ids.push_back(m.id());
   }
   search.total_delays.assign(count, 0.0);

   const unsigned workers =
       static_cast<unsigned>(std::clamp<std::uint64_t>(opts.workers, 1, count));
   if (workers == 1) {
      evaluate_block(table, 0, count, search.total_delays);
   } else {
      std::vector<std::exception_ptr> errors(workers);
      {
         std::vector<std::jthread> pool;
         for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = count * w / workers;
            const std::uint64_t end = count * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
               try {
                  evaluate_block(table, begin, end, search.total_delays);
               } catch (...) {
                  errors[w] = std::current_exception();
               }
            });
         }
      }
      // Lowest block first, matching the serial failure.
      for (const auto& e : errors) {
         if (e) {
            std::rethrow_exception(e);
         }
      }
   }

   const auto& totals = search.total_delays;
   const auto best = static_cast<std::uint64_t>(
       std::min_element(totals.begin(), totals.end()) - totals.begin());
   const double max_total = *std::max_element(totals.begin(), totals.end());
   const auto worst = static_cast<std::uint64_t>(
       std::find_if(totals.begin(), totals.end(),
                    [&](double t) { return t >= max_total - tie_tolerance(max_total); }) -
       totals.begin());
   const double tol = tie_tolerance(totals[best]);
   for (std::uint64_t r = 0; r < count; ++r) {
      if (totals[r] <= totals[best] + tol) {
         search.tied_optima.push_back(r);
      }
   }
   search.best = make_result(table, search.tied_optima.front());
   search.worst = make_result(table, worst);
   return search;
}

OrderResult optimize_order(std::span<const Mission> missions, const SeparationConfig& cfg,
                           const OptimizerOptions& opts) {
   return search_orders(missions, cfg, opts).best;
}

std::vector<OrderResult> per_order_table(std::span<const Mission> missions,
                                         const SeparationConfig& cfg,
                                         const OptimizerOptions& opts) {
   check_size(missions.size(), opts);
   const PairTable table(sorted_by_id(missions), cfg);
   const std::uint64_t count = factorial(table.size());
   std::vector<OrderResult> rows;
   rows.reserve(count);
   for (std::uint64_t r = 0; r < count; ++r) {
      rows.push_back(make_result(table, r));
   }
   return rows;
}

}  // namespace deconf
