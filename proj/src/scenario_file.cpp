#include "deconf/scenario_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "deconf/geo.hpp"

namespace deconf {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
   throw ScenarioError(where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
   for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
         fail(where, "unknown field '" + key + "'");
      }
   }
}

const json& require(const json& obj, const std::string& where, const char* key) {
   auto it = obj.find(key);
   if (it == obj.end()) {
      fail(where, std::string("missing field '") + key + "'");
   }
   return *it;
}

double number(const json& v, const std::string& where) {
   if (!v.is_number()) {
      fail(where, "expected a number");
   }
   return v.get<double>();
}

std::array<double, 2> pair_of_numbers(const json& v, const std::string& where) {
   if (!v.is_array() || v.size() != 2) {
      fail(where, "expected an array of two numbers");
   }
   return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

std::string line_column(std::string_view text, std::size_t byte) {
   std::size_t line = 1;
   std::size_t column = 1;
   for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
      if (text[i] == '\n') {
         ++line;
         column = 1;
      } else {
         ++column;
      }
   }
   return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
   json doc;
   try {
      doc = json::parse(text.begin(), text.end());
   } catch (const json::parse_error& e) {
      // byte is one past the offending character.
      throw ScenarioError("scenario: malformed JSON at " +
                          line_column(text, e.byte == 0 ? 0 : e.byte - 1));
   }
   if (!doc.is_object()) {
      fail("scenario", "top level must be an object");
   }
   reject_unknown(doc, "scenario", {"version", "units", "separation_h", "missions"});

   ScenarioFile out;
   const json& version = require(doc, "scenario", "version");
   if (!version.is_number_integer() || version.get<int>() != ScenarioFile::kVersion) {
      fail("version", "unsupported version (expected 1)");
   }
   const json& units = require(doc, "scenario", "units");
   if (units == "metric") {
      out.units = Units::Metric;
   } else if (units == "geodetic") {
      out.units = Units::Geodetic;
   } else {
      fail("units", "expected \"metric\" or \"geodetic\"");
   }
   out.separation_h = number(require(doc, "scenario", "separation_h"), "separation_h");
   if (!(std::isfinite(out.separation_h) && out.separation_h > 0.0)) {
      fail("separation_h", "must be positive");
   }

   const json& missions = require(doc, "scenario", "missions");
   if (!missions.is_array() || missions.empty()) {
      fail("missions", "expected a non-empty array");
   }
   std::set<std::string> ids;
   for (std::size_t i = 0; i < missions.size(); ++i) {
      const std::string where = "missions[" + std::to_string(i) + "]";
      const json& m = missions[i];
      if (!m.is_object()) {
         fail(where, "expected an object");
      }
      reject_unknown(m, where, {"id", "origin", "destination", "speed"});
      MissionSpec spec;
      const json& id = require(m, where, "id");
      if (!id.is_string() || id.get<std::string>().empty()) {
         fail(where + ".id", "expected a non-empty string");
      }
      spec.id = id.get<std::string>();
      if (!ids.insert(spec.id).second) {
         fail(where + ".id", "duplicate id '" + spec.id + "'");
      }
      spec.origin = pair_of_numbers(require(m, where, "origin"), where + ".origin");
      spec.destination =
          pair_of_numbers(require(m, where, "destination"), where + ".destination");
      spec.speed = number(require(m, where, "speed"), where + ".speed");
      if (!(std::isfinite(spec.speed) && spec.speed > 0.0)) {
         fail(where + ".speed", "must be positive");
      }
      if (spec.origin == spec.destination) {
         fail(where, "origin equals destination");
      }
      if (out.units == Units::Geodetic) {
         try {
            geo::GeoPoint{spec.origin[0], spec.origin[1]}.validate();
            geo::GeoPoint{spec.destination[0], spec.destination[1]}.validate();
         } catch (const InvalidArgument& e) {
            fail(where, e.what());
         }
      }
      out.missions.push_back(std::move(spec));
   }
   return out;
}

ScenarioFile read_scenario(const std::filesystem::path& path) {
   std::ifstream in(path, std::ios::binary);
   if (!in) {
      throw ScenarioError(path.string() + ": cannot open scenario file");
   }
   std::ostringstream buf;
   buf << in.rdbuf();
   try {
      return parse_scenario(buf.str());
   } catch (const ScenarioError& e) {
      throw ScenarioError(path.string() + ": " + e.what());
   }
}

std::string write_scenario(const ScenarioFile& scenario) {
   json doc = json::object();
   doc["version"] = scenario.version;
   doc["units"] = scenario.units == Units::Metric ? "metric" : "geodetic";
   doc["separation_h"] = scenario.separation_h;
   json missions = json::array();
   for (const MissionSpec& m : scenario.missions) {
      missions.push_back({{"id", m.id},
                          {"origin", m.origin},
                          {"destination", m.destination},
                          {"speed", m.speed}});
   }
   doc["missions"] = std::move(missions);
   return doc.dump(2) + "\n";
}

std::vector<Mission> to_missions(const ScenarioFile& scenario) {
   std::vector<Mission> out;
   out.reserve(scenario.missions.size());
   if (scenario.units == Units::Metric) {
      for (const MissionSpec& m : scenario.missions) {
         out.emplace_back(m.id, Vec2{m.origin[0], m.origin[1]},
                          Vec2{m.destination[0], m.destination[1]}, m.speed);
      }
      return out;
   }
   std::vector<geo::GeoPoint> ports;
   for (const MissionSpec& m : scenario.missions) {
      ports.push_back({m.origin[0], m.origin[1]});
      ports.push_back({m.destination[0], m.destination[1]});
   }
   const geo::GeoPoint ref = geo::centroid(ports);
   for (const MissionSpec& m : scenario.missions) {
      out.emplace_back(m.id, geo::project({m.origin[0], m.origin[1]}, ref),
                       geo::project({m.destination[0], m.destination[1]}, ref),
                       geo::mph_to_mps(m.speed));
   }
   return out;
}

SeparationConfig separation_config(const ScenarioFile& scenario,
                                   std::optional<double> h_override) {
   SeparationConfig cfg;
   cfg.h = h_override.value_or(scenario.separation_h);
   cfg.validate();
   return cfg;
}

}  // namespace deconf
