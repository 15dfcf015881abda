// Brute-force reference for the cone raycaster: march each ray in small
// fixed steps, test points against the solids, bisect the first contact
// and work out which face was crossed from the point just before it.
// Shares nothing with the production intersection code.
#pragma once

#include <cmath>
#include <optional>

#include "sonarcane/geometry.hpp"

namespace oracle {

using sonarcane::geometry::Aim;
using sonarcane::geometry::Point;
using sonarcane::geometry::Rect;
using sonarcane::geometry::SagittalScene;

inline double ground_at(const SagittalScene& s, double x) {
  for (const auto& g : s.ground) {
    if (x >= g.x0 && x < g.x1) return g.dz;
  }
  return 0.0;
}

inline bool thick(const Rect& r) { return r.x1 - r.x0 >= 0.3 - 1e-9; }

inline bool inside_rect(const Rect& r, Point p) {
  return p.x >= r.x0 && p.x <= r.x1 && p.z >= r.z0 && p.z <= r.z1;
}

inline bool solid(const SagittalScene& s, Point p) {
  for (const auto& r : s.obstacles) {
    if (thick(r) && inside_rect(r, p)) return true;
  }
  return p.z < ground_at(s, p.x);
}

// Whether crossing from `before` into `after` returns an echo: anything but
// a forward ray dropping through the walking surface.
inline bool crossed_echo_face(const SagittalScene& s, Point before, Point after, Aim aim) {
  for (const auto& r : s.obstacles) {
    if (thick(r) && inside_rect(r, after)) return true;
  }
  const bool through_tread = before.z >= ground_at(s, after.x);
  return aim == Aim::Down || !through_tread;
}

inline Point along(Point o, Point d, double t) { return {o.x + t * d.x, o.z + t * d.z}; }

inline std::optional<double> march(const SagittalScene& s, Point o, Point d, Aim aim, double step,
                                   double max_t) {
  for (double t = step; t <= max_t; t += step) {
    if (!solid(s, along(o, d, t))) continue;
    double lo = t - step;
    double hi = t;
    while (hi - lo > 1e-7) {
      const double mid = 0.5 * (lo + hi);
      (solid(s, along(o, d, mid)) ? hi : lo) = mid;
    }
    const Point before = along(o, d, lo - 1e-6);
    const Point after = along(o, d, hi + 1e-6);
    if (crossed_echo_face(s, before, after, aim)) return hi;
    return std::nullopt;
  }
  return std::nullopt;
}

inline Point direction(Aim aim, double a) {
  return aim == Aim::Forward ? Point{std::cos(a), std::sin(a)} : Point{std::sin(a), -std::cos(a)};
}

/// Minimum echo over `n_rays` uniform directions across the cone.
inline std::optional<double> dense_cone(const SagittalScene& s, Point o, Aim aim,
                                        double half_angle_deg, int n_rays, double step,
                                        double max_t) {
  const double half = half_angle_deg * M_PI / 180.0;
  std::optional<double> best;
  for (int i = 0; i < n_rays; ++i) {
    const double a = -half + 2.0 * half * i / (n_rays - 1);
    const auto hit = march(s, o, direction(aim, a), aim, step, max_t);
    if (hit && (!best || *hit < *best)) best = hit;
  }
  return best;
}

}  // namespace oracle
