// Sagittal-plane scene model and ultrasonic cone raycasting.
//
// All lengths are centimeters. The plane is (x forward, z up); the user
// stands on nominal ground z = 0 and every sensor sits at the user's x.
#pragma once

#include <optional>
#include <vector>

namespace sonarcane::geometry {

inline constexpr double kPi = 3.14159265358979323846;

/// Obstacles whose forward extent is below this are invisible to a cone.
inline constexpr double kMinThickness = 0.3;

struct Point {
  double x = 0.0;
  double z = 0.0;
};

/// Axis-aligned obstacle body in the forward x height plane.
struct Rect {
  double x0 = 0.0;
  double x1 = 0.0;
  double z0 = 0.0;
  double z1 = 0.0;

  bool operator==(const Rect&) const = default;
};

/// Ground elevation `dz` over [x0, x1). Negative is a hole or down-step.
struct GroundSegment {
  double x0 = 0.0;
  double x1 = 0.0;
  double dz = 0.0;

  bool operator==(const GroundSegment&) const = default;
};

/// Obstacles plus a piecewise-constant ground profile.
///
/// `ground` lists the authored segments sorted by x0 and pairwise disjoint
/// (touching is fine). Any stretch of the forward axis they leave uncovered
/// is nominal ground at dz = 0, so the profile always partitions the axis.
/// A jump in elevation between neighbouring pieces is a vertical riser.
struct SagittalScene {
  std::vector<Rect> obstacles;
  std::vector<GroundSegment> ground;

  bool operator==(const SagittalScene&) const = default;
};

enum class Aim { Forward, Down };

/// `angle` is in radians, measured from the sensor's aim axis. For a
/// Forward sensor positive tilts up; for a Down sensor positive tilts forward.
struct Ray {
  Point origin;
  double angle = 0.0;
};

/// Throws ConfigError if a rect is inverted or ground segments overlap or
/// are unsorted.
void validate(const SagittalScene& scene);

/// Ground elevation at x. At a segment boundary the right-hand piece wins.
double elevation_at(const SagittalScene& scene, double x);

/// The full ground partition, including the dz = 0 fillers and the two
/// unbounded flanks (x0 = -inf, x1 = +inf).
std::vector<GroundSegment> ground_profile(const SagittalScene& scene);

/// Forward distance at which the lower edge of the upper cone meets the
/// upper edge of the lower cone, for two parallel forward sensors with
/// full opening angle `divergence_deg`.
double overlap_distance(double h_upper, double h_lower, double divergence_deg);

/// Unit direction of `angle` about the axis of `aim`.
Point ray_direction(Aim aim, double angle);

/// Distance to the first surface along the ray.
///
/// Obstacle faces and ground risers always echo. The walking surface
/// itself echoes only for Down sensors: a Forward ray that meets the floor
/// at a grazing angle is scattered away and yields no hit, and it does not
/// continue past the floor either.
///
/// Throws InvalidRay if the origin is below the local ground or the ray is
/// 90 degrees or more off its axis.
std::optional<double> raycast(const SagittalScene& scene, const Ray& ray, Aim aim);

/// Nearest echo anywhere inside the cone of half-angle `half_angle_deg`.
///
/// Samples `n_rays` uniform angles (odd, so the axis is one of them) and,
/// in addition, directions just either side of every scene vertex that
/// falls inside the cone. Between consecutive critical directions the first
/// face hit does not change and its distance is smallest either at an end
/// or on the axis, so the result is the cone minimum to within a rounding
/// error. Obstacles thinner than kMinThickness along x are dropped first.
std::optional<double> cone_min_distance(const SagittalScene& scene, Point origin, Aim aim,
                                        double half_angle_deg, int n_rays);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace sonarcane::geometry
