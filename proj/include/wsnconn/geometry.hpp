#pragma once

// Distances and disk areas on the unit torus and the unit square.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "wsnconn/errors.hpp"

namespace wsnconn {

enum class Region { Torus, Square };

inline std::string_view to_string(Region region) {
  return region == Region::Torus ? "torus" : "square";
}

inline Region parse_region(std::string_view text) {
  if (text == "torus") return Region::Torus;
  if (text == "square") return Region::Square;
  throw DomainError("region: expected 'torus' or 'square', got '" + std::string(text) + "'");
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Boundary zones of the unit square for a disk of radius r:
//   S0  farther than r from every edge
//   S1  within r/2 of exactly one edge (and farther than r from the others)
//   S2  between r/2 and r from exactly one edge
//   S3  within r of two edges
enum class SquareZone { S0, S1, S2, S3 };

// Area of the closed disk intersection of two equal disks, d apart.
inline double lens_area(double d, double r) {
  detail::require(d >= 0.0, "lens_area", "center distance must be non-negative");
  detail::require(r > 0.0, "lens_area", "radius must be positive");
  if (d >= 2.0 * r) {
    return 0.0;
  }
  const double half = 0.5 * d;
  return 2.0 * r * r * std::acos(half / r) - half * std::sqrt(4.0 * r * r - d * d);
}

namespace detail {

inline void require_radius(double r, const char* who) {
  require(r > 0.0 && r < 0.5, who, "radius must lie in (0, 0.5), got " + std::to_string(r));
}

// Squared torus distance by per-axis folding.
inline double torus_distance_sq(const Point& a, const Point& b) noexcept {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  dx = std::min(dx, 1.0 - dx);
  dy = std::min(dy, 1.0 - dy);
  return dx * dx + dy * dy;
}

inline double square_distance_sq(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance_sq(Region region, const Point& a, const Point& b) noexcept {
  return region == Region::Torus ? torus_distance_sq(a, b) : square_distance_sq(a, b);
}

// Area of {0 <= X <= x, 0 <= Y <= y, X^2 + Y^2 <= r^2} for x, y >= 0.
inline double quarter_box_area(double x, double y, double r) {
  x = std::min(x, r);
  y = std::min(y, r);
  if (x * x + y * y <= r * r) {
    return x * y;
  }
  // Integrate min(y, sqrt(r^2 - X^2)) over [0, x]; the circle drops below y at xs.
  const double xs = std::sqrt(std::max(0.0, r * r - y * y));
  const auto antiderivative = [r](double t) {
    const double s = std::clamp(t / r, -1.0, 1.0);
    return 0.5 * (t * std::sqrt(std::max(0.0, r * r - t * t)) + r * r * std::asin(s));
  };
  return y * xs + antiderivative(x) - antiderivative(xs);
}

// Odd extension in each coordinate, so rectangles decompose by inclusion-exclusion.
inline double signed_quarter_box_area(double x, double y, double r) {
  const double sx = x < 0.0 ? -1.0 : 1.0;
  const double sy = y < 0.0 ? -1.0 : 1.0;
  return sx * sy * quarter_box_area(std::abs(x), std::abs(y), r);
}

}  // namespace detail

/// Distance on the region. On the torus this is the minimum over the nine
/// translates of b by the integer lattice.
inline double distance(Region region, const Point& a, const Point& b) {
  if (region == Region::Square) {
    return std::sqrt(detail::square_distance_sq(a, b));
  }
  // Offsets are applied to the difference, so swapping a and b only negates
  // every candidate and the result is exactly symmetric.
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  double best = std::numeric_limits<double>::infinity();
  for (int ox = -1; ox <= 1; ++ox) {
    for (int oy = -1; oy <= 1; ++oy) {
      best = std::min(best, (dx + ox) * (dx + ox) + (dy + oy) * (dy + oy));
    }
  }
  return std::sqrt(best);
}

namespace detail {
// Disk of radius r whose center is g in [0, r] inside a single straight edge.
inline double one_edge_area(double g, double r) {
  return (std::numbers::pi - std::acos(g / r)) * r * r + g * std::sqrt(r * r - g * g);
}
}  // namespace detail

/// Area of the disk of radius r around `center`, intersected with the region.
inline double clipped_disk_area(Region region, const Point& center, double r) {
  detail::require_radius(r, "clipped_disk_area");
  if (region == Region::Torus) {
    return std::numbers::pi * r * r;
  }
  const double gaps[4] = {center.x, 1.0 - center.x, center.y, 1.0 - center.y};
  int near = 0;
  double g = 0.0;
  for (double d : gaps) {
    if (d < r) {
      ++near;
      g = d;
    }
  }
  // Interior and single-edge centers get the closed form directly; inclusion-exclusion
  // would only add cancellation error there.
  if (near == 0) return std::numbers::pi * r * r;
  if (near == 1 && g >= 0.0) return detail::one_edge_area(g, r);
  // Box [0,1]^2 in coordinates relative to the center.
  const double x0 = -center.x;
  const double x1 = 1.0 - center.x;
  const double y0 = -center.y;
  const double y1 = 1.0 - center.y;
  using detail::signed_quarter_box_area;
  return signed_quarter_box_area(x1, y1, r) - signed_quarter_box_area(x0, y1, r) -
         signed_quarter_box_area(x1, y0, r) + signed_quarter_box_area(x0, y0, r);
}

struct BoundaryArea {
  double value = 0.0;
  double first_derivative = 0.0;
  double second_derivative = 0.0;
};

/// H(g): area of a radius-r disk whose center sits g from a single edge,
/// with its first two derivatives in g. Defined on the zone-S1 range [0, r/2].
inline BoundaryArea boundary_area_H(double g, double r) {
  detail::require(r > 0.0, "boundary_area_H", "radius must be positive");
  detail::require(g >= 0.0 && g <= 0.5 * r, "boundary_area_H",
                  "edge distance g=" + std::to_string(g) + " outside [0, r/2]");
  const double root = std::sqrt(r * r - g * g);
  return BoundaryArea{
      detail::one_edge_area(g, r),
      2.0 * root,
      -2.0 * g / root,
  };
}

/// Zone of `center` in the unit-square partition for radius r.
inline SquareZone classify_square_zone(const Point& center, double r) {
  detail::require_radius(r, "classify_square_zone");
  const double dx = std::min(center.x, 1.0 - center.x);
  const double dy = std::min(center.y, 1.0 - center.y);
  if (dx <= r && dy <= r) {
    return SquareZone::S3;
  }
  const double nearest = std::min(dx, dy);
  if (nearest > r) {
    return SquareZone::S0;
  }
  return nearest <= 0.5 * r ? SquareZone::S1 : SquareZone::S2;
}

/// Lebesgue measure of each zone.
inline double square_zone_area(SquareZone zone, double r) {
  detail::require_radius(r, "square_zone_area");
  switch (zone) {
    case SquareZone::S0:
      return (1.0 - 2.0 * r) * (1.0 - 2.0 * r);
    case SquareZone::S1:
      return 4.0 * (1.0 - 2.0 * r) * 0.5 * r;
    case SquareZone::S2:
      return 2.0 * r * (1.0 - 2.0 * r);
    case SquareZone::S3:
      return 4.0 * r * r;
  }
  return 0.0;
}

inline std::string_view to_string(SquareZone zone) {
  static constexpr std::array<std::string_view, 4> names{"S0", "S1", "S2", "S3"};
  return names[static_cast<std::size_t>(zone)];
}

}  // namespace wsnconn
