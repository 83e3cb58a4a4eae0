#include "deconf/geo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "deconf/errors.hpp"

namespace deconf::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

}  // namespace

void GeoPoint::validate() const {
   if (!(std::isfinite(lat) && lat >= -90.0 && lat <= 90.0 && std::isfinite(lon) &&
         lon >= -180.0 && lon <= 180.0)) {
      throw InvalidArgument("coordinate (" + std::to_string(lat) + ", " +
                            std::to_string(lon) + ") is outside lat/lon bounds");
   }
}

Vec2 project(GeoPoint p, GeoPoint ref) {
   p.validate();
   ref.validate();
   double dlon = p.lon - ref.lon;
   if (dlon > 180.0) dlon -= 360.0;
   if (dlon < -180.0) dlon += 360.0;
   const Vec2 xy{kEarthRadius * dlon * kDegToRad * std::cos(ref.lat * kDegToRad),
                 kEarthRadius * (p.lat - ref.lat) * kDegToRad};
   if (norm(xy) > kMaxProjectionRange) {
      throw OutOfProjectionRange("point is " + std::to_string(norm(xy) / 1000.0) +
                                 " km from the projection reference (limit 200 km)");
   }
   return xy;
}

GeoPoint unproject(Vec2 xy, GeoPoint ref) {
   ref.validate();
   return {ref.lat + xy.y / kEarthRadius / kDegToRad,
           ref.lon + xy.x / (kEarthRadius * std::cos(ref.lat * kDegToRad)) / kDegToRad};
}

GeoPoint centroid(std::span<const GeoPoint> points) {
   if (points.empty()) {
      throw InvalidArgument("centroid of no points");
   }
   GeoPoint c;
   for (const GeoPoint& p : points) {
      c.lat += p.lat;
      c.lon += p.lon;
   }
   c.lat /= static_cast<double>(points.size());
   c.lon /= static_cast<double>(points.size());
   return c;
}

}  // namespace deconf::geo
