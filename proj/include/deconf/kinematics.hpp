#ifndef DECONF_KINEMATICS_HPP_
#define DECONF_KINEMATICS_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <utility>

namespace deconf {

// ---------------------------------------------------------------------------
// Planar vectors (meters, meters/second)
// ---------------------------------------------------------------------------

struct Vec2 {
   double x = 0.0;
   double y = 0.0;

   friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
   friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
   friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
   friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
   friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
   friend constexpr bool operator==(Vec2, Vec2) = default;

   bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_sq(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// ---------------------------------------------------------------------------
// Missions
// ---------------------------------------------------------------------------

/// Straight-line constant-speed flight between two vertiports.
///
/// Times passed to a Mission are measured from its own departure. The agent
/// is airborne on [0, duration()); at and after arrival it occupies no
/// airspace.
class Mission {
 public:
   /// Throws InvalidArgument on non-finite coordinates, speed <= 0 or a
   /// zero-length route.
   Mission(std::string id, Vec2 origin, Vec2 destination, double speed);

   const std::string& id() const noexcept { return id_; }
   Vec2 origin() const noexcept { return origin_; }
   Vec2 destination() const noexcept { return destination_; }
   double speed() const noexcept { return speed_; }
   Vec2 velocity() const noexcept { return velocity_; }
   double length() const noexcept { return length_; }
   double duration() const noexcept { return duration_; }

   Vec2 position_at(double t_since_departure) const {
      return origin_ + t_since_departure * velocity_;
   }

 private:
   std::string id_;
   Vec2 origin_;
   Vec2 destination_;
   double speed_;
   Vec2 velocity_;
   double length_;
   double duration_;
};

/// Relative motion of `a` with respect to `b`, referenced to the instant `b`
/// departs: R(s) = U s + P.
struct RelativeState {
   Vec2 relative_velocity;  ///< U = V_a - V_b
   Vec2 relative_position;  ///< P = (origin_a + delta V_a) - origin_b
};

struct SeparationConfig {
   double h = 1.5;           ///< minimum separation radius [m]
   double tol = 1e-6;        ///< root tolerance [s]
   double oracle_dt = 1e-3;  ///< brute-force sampling step [s]

   /// Throws InvalidArgument unless every field is finite and positive.
   void validate() const;
};

/// Open span (lo, hi) of relative delays `second_departure - first_departure`
/// for which the pair loses separation. Endpoints themselves are feasible.
struct ForbiddenInterval {
   enum class Kind { Empty, Bounded, Unbounded };

   Kind kind = Kind::Empty;
   double lo = 0.0;
   double hi = 0.0;

   static ForbiddenInterval empty() { return {}; }
   static ForbiddenInterval bounded(double lo, double hi) {
      return {Kind::Bounded, lo, hi};
   }

   bool is_empty() const noexcept { return kind == Kind::Empty; }
   double width() const noexcept { return kind == Kind::Bounded ? hi - lo : 0.0; }
   bool contains(double delay) const noexcept {
      return kind == Kind::Unbounded ||
             (kind == Kind::Bounded && lo < delay && delay < hi);
   }
   /// Same interval seen with the roles of the two missions swapped.
   ForbiddenInterval mirrored() const noexcept {
      return kind == Kind::Bounded ? bounded(-hi, -lo) : *this;
   }
};

const char* to_string(ForbiddenInterval::Kind kind) noexcept;

struct ClosestApproach {
   double time;     ///< absolute time of the minimum
   double dist_sq;  ///< squared separation at that time [m^2]
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

RelativeState relative_state(const Mission& a, const Mission& b, double delta);

/// Time of closest approach of the unbounded relative line, -(U.P)/|U|^2.
/// Throws DegenerateRelativeVelocity when |U| is numerically zero.
double cpa_time(const RelativeState& rs);

/// Closest approach over the interval where both agents are airborne.
/// std::nullopt when the airborne windows do not overlap.
std::optional<ClosestApproach> closest_approach(const Mission& a, double t_dep_a,
                                                const Mission& b, double t_dep_b);

/// Squared minimum co-airborne separation; std::nullopt when the agents are
/// never airborne at the same time.
std::optional<double> min_separation_sq(const Mission& a, double t_dep_a,
                                        const Mission& b, double t_dep_b);

/// Roots of the delay quadratic |P(d)|^2 - (U.P(d))^2/|U|^2 = h^2 for two
/// infinitely long tracks. std::nullopt when |U| = 0 or the discriminant is
/// not positive.
std::optional<std::pair<double, double>> line_conflict_roots(const Mission& first,
                                                             const Mission& second,
                                                             double h);

/// Relative delays of `second` w.r.t. `first` that violate separation `cfg.h`
/// while both are airborne. Finite flights always give Empty or Bounded:
/// the result lies inside (-second.duration(), first.duration()).
ForbiddenInterval forbidden_interval(const Mission& first, const Mission& second,
                                     const SeparationConfig& cfg);

}  // namespace deconf

#endif  // DECONF_KINEMATICS_HPP_
