#include "deconf/kinematics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "deconf/errors.hpp"

namespace deconf {

namespace {

constexpr double kDegenerateSpeed = 1e-12;     // m/s
constexpr double kDiscriminantFloor = 1e-12;   // m^2 s^-2 scale

// Real roots of a x^2 + b x + c = 0 with a > 0, ascending. Uses the
// cancellation-free form for the smaller-magnitude root.
std::optional<std::pair<double, double>> solve_quadratic(double a, double b, double c,
                                                         double disc_floor = 0.0) {
   const double disc = b * b - 4.0 * a * c;
   if (!(disc > disc_floor)) {
      return std::nullopt;
   }
   const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
   double r1 = q / a;
   double r2 = (q != 0.0) ? c / q : -r1;
   if (r1 > r2) {
      std::swap(r1, r2);
   }
   return std::pair{r1, r2};
}

}  // namespace

Mission::Mission(std::string id, Vec2 origin, Vec2 destination, double speed)
    : id_(std::move(id)), origin_(origin), destination_(destination), speed_(speed) {
   if (!origin.finite() || !destination.finite()) {
      throw InvalidArgument("mission '" + id_ + "': non-finite coordinates");
   }
   if (!(std::isfinite(speed) && speed > 0.0)) {
      throw InvalidArgument("mission '" + id_ + "': speed must be positive");
   }
   const Vec2 route = destination - origin;
   length_ = norm(route);
   if (!(length_ > 0.0)) {
      throw InvalidArgument("mission '" + id_ + "': origin equals destination");
   }
   velocity_ = (speed / length_) * route;
   duration_ = length_ / speed;
}

void SeparationConfig::validate() const {
   auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
   if (!positive(h) || !positive(tol) || !positive(oracle_dt)) {
      throw InvalidArgument("separation config: h, tol and oracle_dt must be positive");
   }
}

const char* to_string(ForbiddenInterval::Kind kind) noexcept {
   switch (kind) {
      case ForbiddenInterval::Kind::Empty: return "Empty";
      case ForbiddenInterval::Kind::Bounded: return "Bounded";
      case ForbiddenInterval::Kind::Unbounded: return "Unbounded";
   }
   return "?";
}

RelativeState relative_state(const Mission& a, const Mission& b, double delta) {
   return {a.velocity() - b.velocity(),
           (a.origin() + delta * a.velocity()) - b.origin()};
}

double cpa_time(const RelativeState& rs) {
   const double u2 = norm_sq(rs.relative_velocity);
   if (std::sqrt(u2) <= kDegenerateSpeed) {
      throw DegenerateRelativeVelocity();
   }
   return -dot(rs.relative_velocity, rs.relative_position) / u2;
}

std::optional<ClosestApproach> closest_approach(const Mission& a, double t_dep_a,
                                                const Mission& b, double t_dep_b) {
   const double start = std::max(t_dep_a, t_dep_b);
   const double end = std::min(t_dep_a + a.duration(), t_dep_b + b.duration());
   if (!(start < end)) {
      return std::nullopt;
   }
   const Vec2 r0 = a.position_at(start - t_dep_a) - b.position_at(start - t_dep_b);
   const Vec2 u = a.velocity() - b.velocity();
   const double span = end - start;

   // Convex in time: the vertex clamped to the window, or a window end.
   std::array<double, 3> taus{0.0, span, 0.0};
   if (const double u2 = norm_sq(u); u2 > 0.0) {
      taus[2] = std::clamp(-dot(u, r0) / u2, 0.0, span);
   }
   ClosestApproach best{start, std::numeric_limits<double>::infinity()};
   for (double tau : taus) {
      const double d2 = norm_sq(r0 + tau * u);
      if (d2 < best.dist_sq) {
         best = {start + tau, d2};
      }
   }
   return best;
}

std::optional<double> min_separation_sq(const Mission& a, double t_dep_a,
                                        const Mission& b, double t_dep_b) {
   if (auto ca = closest_approach(a, t_dep_a, b, t_dep_b)) {
      return ca->dist_sq;
   }
   return std::nullopt;
}

std::optional<std::pair<double, double>> line_conflict_roots(const Mission& first,
                                                             const Mission& second,
                                                             double h) {
   const Vec2 u = first.velocity() - second.velocity();
   const double u2 = norm_sq(u);
   if (std::sqrt(u2) <= kDegenerateSpeed) {
      return std::nullopt;
   }
   // P(d) = c + d V_first; min |R|^2 = |P|^2 - (U.P)^2/|U|^2.
   const Vec2 c = first.origin() - second.origin();
   const Vec2 v = first.velocity();
   const double uv = dot(u, v);
   const double uc = dot(u, c);
   const double a2 = norm_sq(v) - uv * uv / u2;
   const double a1 = 2.0 * (dot(c, v) - uc * uv / u2);
   const double a0 = norm_sq(c) - uc * uc / u2 - h * h;
   if (!(a2 > 0.0)) {
      return std::nullopt;
   }
   return solve_quadratic(a2, a1, a0, kDiscriminantFloor);
}

ForbiddenInterval forbidden_interval(const Mission& first, const Mission& second,
                                     const SeparationConfig& cfg) {
   cfg.validate();
   // Work in (t, s): t = time since `first` departed, s = time since `second`
   // departed, delay = t - s. The conflict region is the open set
   // |c + V1 t - V2 s| < h intersected with the airborne box
   // [0, D1) x [0, D2). It is convex, so its delay projection is one open
   // interval whose ends are extremes of t - s over the closed region: either
   // a tangent point of the conflict boundary inside the box (the delay
   // quadratic's roots) or an end of a box edge's feasible chord.
   const Vec2 c = first.origin() - second.origin();
   const Vec2 v1 = first.velocity();
   const Vec2 v2 = second.velocity();
   const double d1 = first.duration();
   const double d2 = second.duration();
   const double h2 = cfg.h * cfg.h;

   std::vector<double> candidates;
   candidates.reserve(10);

   if (auto roots = line_conflict_roots(first, second, cfg.h)) {
      const double slack = 1e-12 * std::max({1.0, d1, d2});
      for (double delay : {roots->first, roots->second}) {
         const double s = cpa_time(relative_state(first, second, delay));
         const double t = s + delay;
         if (t >= -slack && t <= d1 + slack && s >= -slack && s <= d2 + slack) {
            candidates.push_back(delay);
         }
      }
   }

   struct Edge {
      Vec2 r0;     // relative position at lambda = 0
      Vec2 w;      // d(relative position)/d lambda
      double len;  // lambda range [0, len]
      double delay0;
      double delay_slope;
   };
   const std::array<Edge, 4> edges{{
       {c, -1.0 * v2, d2, 0.0, -1.0},            // t = 0
       {c + d1 * v1, -1.0 * v2, d2, d1, -1.0},   // t = D1
       {c, v1, d1, 0.0, 1.0},                    // s = 0
       {c - d2 * v2, v1, d1, -d2, 1.0},          // s = D2
   }};
   for (const Edge& e : edges) {
      auto roots = solve_quadratic(norm_sq(e.w), 2.0 * dot(e.r0, e.w),
                                   norm_sq(e.r0) - h2);
      if (!roots) {
         continue;
      }
      const double from = std::max(roots->first, 0.0);
      const double to = std::min(roots->second, e.len);
      if (from <= to) {
         candidates.push_back(e.delay0 + e.delay_slope * from);
         candidates.push_back(e.delay0 + e.delay_slope * to);
      }
   }

   if (candidates.empty()) {
      return ForbiddenInterval::empty();
   }
   const auto [lo, hi] = std::minmax_element(candidates.begin(), candidates.end());
   if (!(*hi - *lo > cfg.tol)) {
      // Grazing contact only: separation equals h, which is allowed.
      return ForbiddenInterval::empty();
   }
   return ForbiddenInterval::bounded(*lo, *hi);
}

}  // namespace deconf
