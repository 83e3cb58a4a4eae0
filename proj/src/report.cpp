#include "deconf/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "deconf/errors.hpp"

namespace deconf::report {

using nlohmann::json;

std::string number(double value) {
   char buf[64];
   const auto res = std::to_chars(buf, buf + sizeof buf, value);
   return std::string(buf, res.ptr);
}

std::string samples_csv(std::span<const DelaySample> samples, SampleMode mode) {
   std::string out = mode == SampleMode::Pooled
                         ? "n_agents,topology_index,order_rank,average_delay_s\n"
                         : "n_agents,topology_index,average_delay_s\n";
   for (const DelaySample& s : samples) {
      out += std::to_string(s.n_agents);
      out += ',';
      out += std::to_string(s.topology_index);
      out += ',';
      if (mode == SampleMode::Pooled) {
         out += std::to_string(s.order_rank.value_or(0));
         out += ',';
      }
      out += number(s.average_delay);
      out += '\n';
   }
   return out;
}

std::vector<double> parse_samples_csv(std::string_view text) {
   std::vector<double> values;
   std::size_t line_no = 0;
   std::size_t column = 0;
   std::size_t columns = 0;
   while (!text.empty()) {
      const std::size_t nl = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (!line.empty() && line.back() == '\r') {
         line.remove_suffix(1);
      }
      if (line.empty()) {
         continue;
      }
      std::vector<std::string_view> fields;
      for (std::size_t start = 0;;) {
         const std::size_t comma = line.find(',', start);
         fields.push_back(line.substr(start, comma - start));
         if (comma == std::string_view::npos) break;
         start = comma + 1;
      }
      if (columns == 0) {
         columns = fields.size();
         auto it = std::find(fields.begin(), fields.end(), "average_delay_s");
         if (it == fields.end()) {
            throw InvalidArgument("samples CSV line 1: no average_delay_s column");
         }
         column = static_cast<std::size_t>(it - fields.begin());
         continue;
      }
      if (fields.size() != columns) {
         throw InvalidArgument("samples CSV line " + std::to_string(line_no) +
                               ": expected " + std::to_string(columns) + " fields");
      }
      const std::string_view field = fields[column];
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
         throw InvalidArgument("samples CSV line " + std::to_string(line_no) +
                               ": average_delay_s is not a number");
      }
      values.push_back(v);
   }
   if (columns == 0) {
      throw InvalidArgument("samples CSV is empty");
   }
   return values;
}

std::string orders_csv(const OrderSearch& search) {
   std::string out = "rank,order,total_delay_s,average_delay_s\n";
   const double n = static_cast<double>(search.sorted_ids.size());
   for (std::uint64_t r = 0; r < search.total_delays.size(); ++r) {
      out += std::to_string(r);
      out += ',';
      const auto ids = search.order_at(r);
      for (std::size_t i = 0; i < ids.size(); ++i) {
         if (i) out += '-';
         out += ids[i];
      }
      out += ',';
      out += number(search.total_delays[r]);
      out += ',';
      out += number(search.total_delays[r] / n);
      out += '\n';
   }
   return out;
}

std::string schedule_csv(const Schedule& schedule) {
   std::string out = "mission_id,departure_s\n";
   for (const auto& e : schedule.entries) {
      out += e.mission_id + ',' + number(e.departure) + '\n';
   }
   return out;
}

json to_json(const ForbiddenInterval& interval) {
   json j{{"kind", to_string(interval.kind)}};
   if (interval.kind == ForbiddenInterval::Kind::Bounded) {
      j["lo_s"] = interval.lo;
      j["hi_s"] = interval.hi;
   }
   return j;
}

json to_json(const Schedule& schedule) {
   json entries = json::array();
   for (const auto& e : schedule.entries) {
      entries.push_back(
          {{"mission_id", e.mission_id}, {"departure_s", e.departure}, {"bindings", e.bindings}});
   }
   return {{"order", schedule.order()},
           {"entries", std::move(entries)},
           {"total_delay_s", schedule.total_delay()}};
}

json to_json(const OrderResult& result) {
   return {{"order", result.order},
           {"schedule", to_json(result.schedule)},
           {"total_delay_s", result.total_delay},
           {"average_delay_s", result.average_delay}};
}

json to_json(const statfit::FitResult& fit) {
   json params = json::object();
   for (const auto& [name, value] : fit.params.values) {
      params[name] = value;
   }
   json bins = json::array();
   for (std::size_t i = 0; i < fit.histogram.bins(); ++i) {
      const double c = fit.histogram.center(i);
      bins.push_back(json::array({c, fit.histogram.densities[i], fit.params.pdf(c)}));
   }
   return {{"family", statfit::to_string(fit.family())},
           {"params", std::move(params)},
           {"ssr", fit.ssr},
           {"bins", fit.histogram.bins()},
           {"bin_edges", fit.histogram.edges},
           {"density", std::move(bins)}};
}

json fit_report(const statfit::FitResult& best,
                std::span<const statfit::FitResult> candidates) {
   json all = json::array();
   for (const auto& c : candidates) {
      all.push_back(to_json(c));
   }
   return {{"best", to_json(best)}, {"candidates", std::move(all)}};
}

}  // namespace deconf::report
