#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace stringnet {

inline constexpr double kPi = 3.14159265358979323846;

/// Planar vector. Used for positions (m), velocities (m/s) and accelerations (m/s^2).
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 &operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2 &operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }
  constexpr Vec2 &operator/=(double s) { x /= s; y /= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] constexpr double squared_norm() const { return x * x + y * y; }
  [[nodiscard]] bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

[[nodiscard]] constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Unit vector at angle theta from the x-axis.
[[nodiscard]] inline Vec2 unit_at(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Angle of v from the x-axis in (-pi, pi].
[[nodiscard]] inline double heading(Vec2 v) { return std::atan2(v.y, v.x); }

/// v / |v|, or the zero vector when |v| is below tiny.
[[nodiscard]] Vec2 normalized_or_zero(Vec2 v, double tiny = 1e-12);

/// Rotates v counter-clockwise by theta.
[[nodiscard]] Vec2 rotate(Vec2 v, double theta);

/// Wraps an angle into (-pi, pi].
[[nodiscard]] double wrap_angle(double theta);

/// Closed disk; the protected area and the safe areas.
struct Disk {
  Vec2 center;
  double radius{1.0};

  [[nodiscard]] bool contains(Vec2 p) const { return distance(p, center) <= radius; }
  friend bool operator==(const Disk &, const Disk &) = default;
};

[[nodiscard]] bool disks_overlap(const Disk &a, const Disk &b);

[[nodiscard]] Vec2 mean(std::span<const Vec2> pts);

/// Closest point to p on segment [a, b].
[[nodiscard]] Vec2 closest_point_on_segment(Vec2 p, Vec2 a, Vec2 b);

/// True when the open segments [p1,p2] and [q1,q2] properly intersect or touch.
[[nodiscard]] bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2);

/// Even-odd point-in-polygon test; boundary points count as inside.
[[nodiscard]] bool point_in_polygon(Vec2 p, std::span<const Vec2> polygon);

/// Convex hull (counter-clockwise, no collinear points) via monotone chain.
[[nodiscard]] std::vector<Vec2> convex_hull(std::span<const Vec2> pts);

/// Centroid of the convex hull of pts. Degenerate hulls fall back to the
/// centroid of the segment (collinear input) or the point itself.
[[nodiscard]] Vec2 hull_centroid(std::span<const Vec2> pts);

}  // namespace stringnet
