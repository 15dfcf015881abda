#include "sonarcane/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sonarcane/error.hpp"

namespace sonarcane::geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack for on-boundary tests, so a ray aimed at a vertex counts as touching it.
constexpr double kEdgeEps = 1e-9;

// Vertex directions are probed this far to either side rather than dead on,
// so a ray that only grazes a convex corner is not mistaken for an echo.
constexpr double kVertexNudge = 1e-9;

// Axis-aligned face. Vertical faces sit at x = at and span [lo, hi] in z;
// horizontal faces sit at z = at and span [lo, hi] in x.
struct Face {
  bool vertical;
  double at;
  double lo;
  double hi;
  bool tread;  // walking surface of the ground profile
};

bool echoes(const Face& f, Aim aim) { return !(f.tread && aim == Aim::Forward); }

std::vector<Face> collect_faces(const SagittalScene& scene, bool cull_thin) {
  std::vector<Face> faces;
  for (const Rect& r : scene.obstacles) {
    if (cull_thin && (r.x1 - r.x0) < kMinThickness - kEdgeEps) continue;
    faces.push_back({true, r.x0, r.z0, r.z1, false});
    faces.push_back({true, r.x1, r.z0, r.z1, false});
    faces.push_back({false, r.z0, r.x0, r.x1, false});
    faces.push_back({false, r.z1, r.x0, r.x1, false});
  }
  const auto profile = ground_profile(scene);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const GroundSegment& g = profile[i];
    faces.push_back({false, g.dz, g.x0, g.x1, true});
    if (i + 1 < profile.size()) {
      const double next = profile[i + 1].dz;
      if (next != g.dz) {
        faces.push_back({true, g.x1, std::min(next, g.dz), std::max(next, g.dz), false});
      }
    }
  }
  return faces;
}

// Parameter along the ray where it meets the face, or +inf.
double intersect(const Face& f, Point o, Point d) {
  if (f.vertical) {
    if (d.x == 0.0) return kInf;
    const double t = (f.at - o.x) / d.x;
    if (t < 0.0) return kInf;
    const double z = o.z + t * d.z;
    return (z >= f.lo - kEdgeEps && z <= f.hi + kEdgeEps) ? t : kInf;
  }
  if (d.z == 0.0) return kInf;
  const double t = (f.at - o.z) / d.z;
  if (t < 0.0) return kInf;
  const double x = o.x + t * d.x;
  return (x >= f.lo - kEdgeEps && x <= f.hi + kEdgeEps) ? t : kInf;
}

std::optional<double> first_echo(const std::vector<Face>& faces, Point o, Point d, Aim aim) {
  double best = kInf;
  bool echo = false;
  for (const Face& f : faces) {
    const double t = intersect(f, o, d);
    if (t == kInf) continue;
    if (t < best - kEdgeEps) {
      best = t;
      echo = echoes(f, aim);
    } else if (t <= best + kEdgeEps) {
      // Shared vertex: an echoing face wins the tie.
      best = std::min(best, t);
      echo = echo || echoes(f, aim);
    }
  }
  if (best == kInf || !echo) return std::nullopt;
  return best;
}

void check_origin(const SagittalScene& scene, Point o) {
  if (o.z < elevation_at(scene, o.x)) {
    throw InvalidRay("ray origin (" + std::to_string(o.x) + ", " + std::to_string(o.z) +
                     ") is below the ground");
  }
}

// Angle of `p` about the aim axis as seen from `o`, or nullopt if p lies
// behind the sensor.
std::optional<double> bearing(Point o, Point p, Aim aim) {
  const double dx = p.x - o.x;
  const double dz = p.z - o.z;
  if (aim == Aim::Forward) {
    if (dx <= 0.0) return std::nullopt;
    return std::atan2(dz, dx);
  }
  if (dz >= 0.0) return std::nullopt;
  return std::atan2(dx, -dz);
}

}  // namespace

void validate(const SagittalScene& scene) {
  for (const Rect& r : scene.obstacles) {
    if (!(r.x0 < r.x1) || !(r.z0 < r.z1)) {
      throw ConfigError("obstacle needs x0 < x1 and z0 < z1");
    }
  }
  for (std::size_t i = 0; i < scene.ground.size(); ++i) {
    const GroundSegment& g = scene.ground[i];
    if (!(g.x0 < g.x1)) throw ConfigError("ground segment needs x0 < x1");
    if (!std::isfinite(g.dz)) throw ConfigError("ground elevation must be finite");
    if (i > 0 && g.x0 < scene.ground[i - 1].x1) {
      throw ConfigError("ground segments must be sorted and must not overlap");
    }
  }
}

double elevation_at(const SagittalScene& scene, double x) {
  for (const GroundSegment& g : scene.ground) {
    if (x >= g.x0 && x < g.x1) return g.dz;
  }
  return 0.0;
}

std::vector<GroundSegment> ground_profile(const SagittalScene& scene) {
  std::vector<GroundSegment> out;
  double cursor = -kInf;
  for (const GroundSegment& g : scene.ground) {
    if (g.x0 > cursor) out.push_back({cursor, g.x0, 0.0});
    out.push_back(g);
    cursor = g.x1;
  }
  out.push_back({cursor, kInf, 0.0});
  // Merge neighbours at the same elevation so no zero-height riser appears.
  std::vector<GroundSegment> merged;
  for (const GroundSegment& g : out) {
    if (!merged.empty() && merged.back().dz == g.dz && merged.back().x1 == g.x0) {
      merged.back().x1 = g.x1;
    } else {
      merged.push_back(g);
    }
  }
  return merged;
}

double overlap_distance(double h_upper, double h_lower, double divergence_deg) {
  if (!(divergence_deg > 0.0 && divergence_deg < 180.0)) {
    throw DomainError("divergence must lie in (0, 180) degrees");
  }
  if (h_upper < h_lower) throw DomainError("upper sensor must not sit below the lower one");
  return (h_upper - h_lower) / (2.0 * std::tan(deg_to_rad(divergence_deg) / 2.0));
}

Point ray_direction(Aim aim, double angle) {
  if (aim == Aim::Forward) return {std::cos(angle), std::sin(angle)};
  return {std::sin(angle), -std::cos(angle)};
}

std::optional<double> raycast(const SagittalScene& scene, const Ray& ray, Aim aim) {
  if (!(std::abs(ray.angle) < kPi / 2.0)) {
    throw InvalidRay("ray must stay within 90 degrees of its aim axis");
  }
  check_origin(scene, ray.origin);
  const auto faces = collect_faces(scene, false);
  return first_echo(faces, ray.origin, ray_direction(aim, ray.angle), aim);
}

std::optional<double> cone_min_distance(const SagittalScene& scene, Point origin, Aim aim,
                                        double half_angle_deg, int n_rays) {
  if (n_rays < 3 || n_rays % 2 == 0) throw DomainError("n_rays must be odd and at least 3");
  if (!(half_angle_deg > 0.0 && half_angle_deg < 90.0)) {
    throw DomainError("half-angle must lie in (0, 90) degrees");
  }
  check_origin(scene, origin);

  const double half = deg_to_rad(half_angle_deg);
  const auto faces = collect_faces(scene, true);

  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(n_rays) + 4 * faces.size());
  const int span = n_rays - 1;
  for (int i = 0; i < n_rays; ++i) {
    angles.push_back(half * static_cast<double>(2 * i - span) / static_cast<double>(span));
  }
  auto add_vertex = [&](Point p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.z)) return;
    const auto a = bearing(origin, p, aim);
    if (!a || std::abs(*a) > half) return;
    angles.push_back(std::max(*a - kVertexNudge, -half));
    angles.push_back(std::min(*a + kVertexNudge, half));
  };
  for (const Face& f : faces) {
    if (f.vertical) {
      add_vertex({f.at, f.lo});
      add_vertex({f.at, f.hi});
    } else {
      add_vertex({f.lo, f.at});
      add_vertex({f.hi, f.at});
    }
  }

  std::optional<double> best;
  for (double a : angles) {
    const auto hit = first_echo(faces, origin, ray_direction(aim, a), aim);
    if (hit && (!best || *hit < *best)) best = hit;
  }
  return best;
}

}  // namespace sonarcane::geometry
