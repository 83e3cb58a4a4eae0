#ifndef DECONF_GEO_HPP_
#define DECONF_GEO_HPP_

#include <span>

#include "deconf/kinematics.hpp"

namespace deconf::geo {

inline constexpr double kEarthRadius = 6'371'000.0;   ///< mean radius [m]
inline constexpr double kMaxProjectionRange = 200'000.0;  ///< [m]
inline constexpr double kMetersPerSecondPerMph = 0.44704;
inline constexpr double kSecondsPerMinute = 60.0;

struct GeoPoint {
   double lat = 0.0;  ///< degrees
   double lon = 0.0;  ///< degrees

   /// Throws InvalidArgument outside [-90, 90] x [-180, 180].
   void validate() const;
};

/// Local equirectangular projection about `ref`: east is +x, north is +y.
/// Throws OutOfProjectionRange when `p` lies more than 200 km from `ref`.
Vec2 project(GeoPoint p, GeoPoint ref);

/// Inverse of project().
GeoPoint unproject(Vec2 xy, GeoPoint ref);

/// Arithmetic mean of latitudes and longitudes.
GeoPoint centroid(std::span<const GeoPoint> points);

constexpr double mph_to_mps(double mph) { return mph * kMetersPerSecondPerMph; }
constexpr double mps_to_mph(double mps) { return mps / kMetersPerSecondPerMph; }
constexpr double minutes_to_seconds(double minutes) { return minutes * kSecondsPerMinute; }
constexpr double seconds_to_minutes(double seconds) { return seconds / kSecondsPerMinute; }

}  // namespace deconf::geo

#endif  // DECONF_GEO_HPP_
