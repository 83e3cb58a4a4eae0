#ifndef DECONF_REPORT_HPP_
#define DECONF_REPORT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "deconf/kinematics.hpp"
#include "deconf/optimizer.hpp"
#include "deconf/scenario.hpp"
#include "deconf/scheduler.hpp"
#include "deconf/statfit.hpp"

namespace deconf::report {

/// Shortest decimal text that round-trips to the same double.
std::string number(double value);

/// `n_agents,topology_index,order_rank,average_delay_s` in pooled mode,
/// `n_agents,topology_index,average_delay_s` otherwise. Header included.
std::string samples_csv(std::span<const DelaySample> samples, SampleMode mode);

/// The average_delay_s column of a samples CSV. Throws InvalidArgument with
/// the offending line number on malformed input.
std::vector<double> parse_samples_csv(std::string_view text);

/// `rank,order,total_delay_s,average_delay_s`, order ids joined by '-'.
std::string orders_csv(const OrderSearch& search);

/// `mission_id,departure_s`.
std::string schedule_csv(const Schedule& schedule);

nlohmann::json to_json(const ForbiddenInterval& interval);
nlohmann::json to_json(const Schedule& schedule);
nlohmann::json to_json(const OrderResult& result);

/// Fit report: the best family plus every candidate, each with parameters,
/// ssr, bin count and (bin_center, empirical, fitted) triples.
nlohmann::json fit_report(const statfit::FitResult& best,
                          std::span<const statfit::FitResult> candidates);

nlohmann::json to_json(const statfit::FitResult& fit);

}  // namespace deconf::report

#endif  // DECONF_REPORT_HPP_
