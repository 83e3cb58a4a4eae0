#ifndef DECONF_SCENARIO_FILE_HPP_
#define DECONF_SCENARIO_FILE_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deconf/errors.hpp"
#include "deconf/kinematics.hpp"

namespace deconf {

/// Parse or validation failure; the message names the line or the field.
class ScenarioError : public InvalidArgument {
 public:
   using InvalidArgument::InvalidArgument;
};

enum class Units { Metric, Geodetic };

/// One mission as written in a scenario file. Metric files give (x, y) in
/// meters and speed in m/s; geodetic files give (lat, lon) in degrees and
/// speed in mph.
struct MissionSpec {
   std::string id;
   std::array<double, 2> origin{};
   std::array<double, 2> destination{};
   double speed = 0.0;

   friend bool operator==(const MissionSpec&, const MissionSpec&) = default;
};

/// Version 1 schema:
///
///   { "version": 1, "units": "metric" | "geodetic", "separation_h": <m>,
///     "missions": [ { "id": "A", "origin": [a, b], "destination": [c, d],
///                     "speed": <v> }, ... ] }
///
/// Unknown keys are rejected.
struct ScenarioFile {
   static constexpr int kVersion = 1;

   int version = kVersion;
   Units units = Units::Metric;
   double separation_h = 1.5;
   std::vector<MissionSpec> missions;

   friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

ScenarioFile parse_scenario(std::string_view text);
ScenarioFile read_scenario(const std::filesystem::path& path);

/// Canonical JSON text (two-space indent, trailing newline).
std::string write_scenario(const ScenarioFile& scenario);

/// Missions in meters and m/s. Geodetic scenarios are projected about the
/// centroid of all their vertiports.
std::vector<Mission> to_missions(const ScenarioFile& scenario);

/// Separation config using `h_override` when given, else the file's h.
SeparationConfig separation_config(const ScenarioFile& scenario,
                                   std::optional<double> h_override = std::nullopt);

}  // namespace deconf

#endif  // DECONF_SCENARIO_FILE_HPP_
