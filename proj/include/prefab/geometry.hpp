#ifndef PREFAB_GEOMETRY_HPP
#define PREFAB_GEOMETRY_HPP

// Planar poses and oriented-rectangle predicates. Everything here is
// templated on the scalar type; the rest of the library uses the double
// aliases at the bottom of the file.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

namespace prefab {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Wraps an angle into [-pi, pi). Values already in range are returned
/// unchanged so that normalization is idempotent bit for bit.
template <typename Scalar>
Scalar normalize_angle(Scalar angle) {
  const Scalar pi = Scalar(EIGEN_PI);
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("angle must be finite");
  }
  if (angle >= -pi && angle < pi) {
    return angle;
  }
  const Scalar two_pi = Scalar(2) * pi;
  Scalar wrapped = std::fmod(angle + pi, two_pi);
  if (wrapped < Scalar(0)) {
    wrapped += two_pi;
  }
  wrapped -= pi;
  if (wrapped >= pi) {
    wrapped -= two_pi;
  }
  return wrapped;
}

template <typename Scalar>
struct Pose2 {
  Vector2<Scalar> position = Vector2<Scalar>::Zero();
  Scalar yaw = Scalar(0);

  Pose2() = default;
  Pose2(Scalar x, Scalar y, Scalar yaw_rad)
      : position(x, y), yaw(normalize_angle(yaw_rad)) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("pose coordinates must be finite");
    }
  }
  Pose2(const Vector2<Scalar>& p, Scalar yaw_rad) : Pose2(p.x(), p.y(), yaw_rad) {}

  Scalar x() const { return position.x(); }
  Scalar y() const { return position.y(); }

  /// Unit vector along the local +x axis (the long axis of a wall).
  Vector2<Scalar> heading() const { return {std::cos(yaw), std::sin(yaw)}; }

  friend bool operator==(const Pose2& a, const Pose2& b) {
    return a.position == b.position && a.yaw == b.yaw;
  }
};

template <typename Scalar>
struct Footprint {
  Scalar half_length = Scalar(0);
  Scalar half_thickness = Scalar(0);

  Footprint() = default;
  Footprint(Scalar half_len, Scalar half_thick)
      : half_length(half_len), half_thickness(half_thick) {
    if (!(std::isfinite(half_len) && half_len > Scalar(0)) ||
        !(std::isfinite(half_thick) && half_thick > Scalar(0))) {
      throw std::invalid_argument("footprint extents must be finite and > 0");
    }
  }

  Footprint inflated(Scalar margin) const {
    return Footprint(half_length + margin, half_thickness + margin);
  }
  Scalar circumradius() const { return std::hypot(half_length, half_thickness); }

  friend bool operator==(const Footprint& a, const Footprint& b) {
    return a.half_length == b.half_length && a.half_thickness == b.half_thickness;
  }
};

template <typename Scalar>
struct OrientedRect {
  Pose2<Scalar> pose;
  Footprint<Scalar> footprint;

  Vector2<Scalar> center() const { return pose.position; }
  Vector2<Scalar> major_axis() const { return pose.heading(); }
  Vector2<Scalar> minor_axis() const {
    const Vector2<Scalar> u = major_axis();
    return {-u.y(), u.x()};
  }
  Scalar area() const {
    return Scalar(4) * footprint.half_length * footprint.half_thickness;
  }

  /// Counterclockwise, starting at the (-length, -thickness) corner.
  std::array<Vector2<Scalar>, 4> corners() const {
    const Vector2<Scalar> u = major_axis() * footprint.half_length;
    const Vector2<Scalar> v = minor_axis() * footprint.half_thickness;
    const Vector2<Scalar> c = center();
    return {c - u - v, c + u - v, c + u + v, c - u + v};
  }

  /// The two points where the long axis meets the short edges.
  std::array<Vector2<Scalar>, 2> end_points() const {
    const Vector2<Scalar> u = major_axis() * footprint.half_length;
    return {center() - u, center() + u};
  }

  /// Closed containment.
  bool contains(const Vector2<Scalar>& p) const {
    const Vector2<Scalar> d = p - center();
    return std::abs(d.dot(major_axis())) <= footprint.half_length &&
           std::abs(d.dot(minor_axis())) <= footprint.half_thickness;
  }

  /// Half-width of the projection onto a unit axis.
  Scalar projected_radius(const Vector2<Scalar>& axis) const {
    return footprint.half_length * std::abs(axis.dot(major_axis())) +
           footprint.half_thickness * std::abs(axis.dot(minor_axis()));
  }
};

/// Separating-axis test on closed rectangles; touching edges overlap.
template <typename Scalar>
bool rect_overlap(const OrientedRect<Scalar>& a, const OrientedRect<Scalar>& b) {
  const Vector2<Scalar> d = b.center() - a.center();
  const std::array<Vector2<Scalar>, 4> axes = {a.major_axis(), a.minor_axis(),
                                               b.major_axis(), b.minor_axis()};
  for (const auto& axis : axes) {
    if (std::abs(d.dot(axis)) > a.projected_radius(axis) + b.projected_radius(axis)) {
      return false;
    }
  }
  return true;
}

/// Euclidean distance from a point to a closed rectangle (0 inside).
template <typename Scalar>
Scalar point_rect_distance(const Vector2<Scalar>& p, const OrientedRect<Scalar>& r) {
  const Vector2<Scalar> d = p - r.center();
  const Scalar du = std::max(Scalar(0), std::abs(d.dot(r.major_axis())) - r.footprint.half_length);
  const Scalar dv = std::max(Scalar(0), std::abs(d.dot(r.minor_axis())) - r.footprint.half_thickness);
  return std::hypot(du, dv);
}

/// Interpolates position linearly; the yaw is always the target yaw since
/// transit happens at a fixed orientation.
template <typename Scalar>
Pose2<Scalar> pose_lerp(const Pose2<Scalar>& from, const Pose2<Scalar>& to, Scalar t) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) {
    throw std::out_of_range("pose_lerp: t must lie in [0, 1]");
  }
  Pose2<Scalar> out;
  out.position = (Scalar(1) - t) * from.position + t * to.position;
  out.yaw = to.yaw;
  return out;
}

template <typename Scalar>
struct SweepHit {
  Pose2<Scalar> pose;
  Scalar arc_length = Scalar(0);   // distance from the segment start
  std::size_t obstacle = 0;        // index into the obstacle span
};

/// Sample positions along a segment: arc lengths 0, step, 2*step, ... and
/// the end point. Halving the step therefore keeps every previous sample.
template <typename Scalar>
std::size_t sweep_sample_count(Scalar length, Scalar step) {
  if (!(step > Scalar(0))) {
    throw std::invalid_argument("sweep step must be > 0");
  }
  const auto interior = static_cast<std::size_t>(std::floor(length / step));
  // interior multiples of step plus the end point (unless it coincides).
  return (Scalar(interior) * step < length) ? interior + 2 : interior + 1;
}

/// Samples the translation from `from` to `to` (at the target yaw) and
/// returns the first sampled pose that overlaps any obstacle.
template <typename Scalar>
std::optional<SweepHit<Scalar>> swept_collides(const Footprint<Scalar>& moving,
                                               const Pose2<Scalar>& from,
                                               const Pose2<Scalar>& to,
                                               std::span<const OrientedRect<Scalar>> obstacles,
                                               Scalar step) {
  const Scalar length = (to.position - from.position).norm();
  const std::size_t samples = sweep_sample_count(length, step);
  if (obstacles.empty()) {
    return std::nullopt;
  }
  for (std::size_t k = 0; k < samples; ++k) {
    Scalar s = std::min(Scalar(k) * step, length);
    if (k + 1 == samples) {
      s = length;
    }
    const Scalar t = length > Scalar(0) ? s / length : Scalar(1);
    const OrientedRect<Scalar> probe{pose_lerp(from, to, std::min(t, Scalar(1))), moving};
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
      if (rect_overlap(probe, obstacles[i])) {
        return SweepHit<Scalar>{probe.pose, s, i};
      }
    }
  }
  return std::nullopt;
}

using Vec2 = Vector2<double>;
using Pose = Pose2<double>;
using WallFootprint = Footprint<double>;
using Rect = OrientedRect<double>;

}  // namespace prefab

#endif  // PREFAB_GEOMETRY_HPP
