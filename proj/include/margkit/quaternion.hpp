#ifndef MARGKIT_QUATERNION_HPP
#define MARGKIT_QUATERNION_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "margkit/vec3.hpp"

namespace margkit {

/// Unit quaternion, scalar-first (w, x, y, z). Represents the rotation taking
/// body-frame vectors into the earth frame. q and -q are the same rotation;
/// compare attitudes with angular_distance(), never component-wise.
struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

/// Euler angles of the ZYX (yaw-pitch-roll, aerospace) intrinsic sequence,
/// radians. yaw, roll in (-pi, pi]; pitch in [-pi/2, pi/2].
struct EulerAngles {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

/// Hamilton product; rotating by a*b equals rotating by b, then by a.
constexpr Quaternion quat_multiply(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

/// Normalizes to unit length. Zero-norm input is a contract violation and
/// throws instead of producing NaN.
inline Quaternion quat_normalize(const Quaternion& q) {
  const double n = q.norm();
  if (n <= 0.0 || !std::isfinite(n)) throw std::domain_error("quat_normalize: zero norm");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

/// Rotates a body-frame vector into the earth frame: v' = q * v * q^-1.
constexpr Vec3 rotate_vector(const Quaternion& q, const Vec3& v) {
  // Expanded q*(0,v)*conj(q) for unit q; two cross products instead of the
  // full triple product.
  const Vec3 u{q.x, q.y, q.z};
  const Vec3 t = cross(u, v) * 2.0;
  return v + t * q.w + cross(u, t);
}

/// Earth frame into body frame: v' = q^-1 * v * q.
constexpr Vec3 rotate_vector_inverse(const Quaternion& q, const Vec3& v) {
  return rotate_vector(conjugate(q), v);
}

/// Rotation by `angle` radians about a unit axis.
inline Quaternion quat_from_axis_angle(const Vec3& axis, double angle) {
  const double h = 0.5 * angle;
  const double s = std::sin(h);
  return {std::cos(h), axis.x * s, axis.y * s, axis.z * s};
}

/// Exponential map of a rotation vector (axis * angle, radians).
inline Quaternion quat_exp(const Vec3& theta) {
  const double angle = theta.norm();
  if (angle < 1e-300) return {1.0, 0.0, 0.0, 0.0};
  return quat_from_axis_angle(theta / angle, angle);
}

/// Rotation vector (axis * angle, angle in [0, pi]) of a unit quaternion.
inline Vec3 quat_log(const Quaternion& q_in) {
  Quaternion q = q_in;
  if (q.w < 0.0) q = {-q.w, -q.x, -q.y, -q.z};
  const double sn = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  if (sn < 1e-300) return {0.0, 0.0, 0.0};
  const double angle = 2.0 * std::atan2(sn, q.w);
  return Vec3{q.x, q.y, q.z} * (angle / sn);
}

/// Shortest rotation taking unit vector `from` onto unit vector `to`.
inline Quaternion shortest_arc(const Vec3& from, const Vec3& to) {
  const double c = dot(from, to);
  if (c < -1.0 + 1e-12) {
    // Antiparallel: pick any axis orthogonal to `from`.
    Vec3 axis = cross(from, Vec3{1.0, 0.0, 0.0});
    if (axis.norm() < 1e-6) axis = cross(from, Vec3{0.0, 1.0, 0.0});
    return quat_from_axis_angle(axis / axis.norm(), 3.14159265358979323846);
  }
  const Vec3 a = cross(from, to);
  Quaternion q{1.0 + c, a.x, a.y, a.z};
  return quat_normalize(q);
}

/// Angle of the relative rotation between two unit quaternions, in [0, pi].
/// Zero iff they are the same rotation (q and -q included).
inline double angular_distance(const Quaternion& a, const Quaternion& b) {
  const double d = std::abs(a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z);
  return 2.0 * std::acos(std::min(1.0, d));
}

/// ZYX intrinsic Euler angles of a unit quaternion. Within 1e-6 rad of the
/// |pitch| = pi/2 singularity, roll is reported as 0 and yaw absorbs the
/// free angle.
inline EulerAngles quat_to_euler(const Quaternion& q) {
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kHalfPi = 1.5707963267948966;
  EulerAngles e;
  const double sin_pitch = std::clamp(2.0 * (q.w * q.y - q.z * q.x), -1.0, 1.0);
  e.pitch = std::asin(sin_pitch);
  if (std::abs(e.pitch) > kHalfPi - 1e-6) {
    // Gimbal lock: only yaw -/+ roll is observable; report roll = 0 and let
    // yaw absorb the free angle.
    e.pitch = std::copysign(kHalfPi, sin_pitch);
    e.roll = 0.0;
    e.yaw = 2.0 * std::atan2(q.z, q.w);
    if (e.yaw > kPi) e.yaw -= 2.0 * kPi;
    if (e.yaw <= -kPi) e.yaw += 2.0 * kPi;
    return e;
  }
  e.yaw = std::atan2(2.0 * (q.w * q.z + q.x * q.y), 1.0 - 2.0 * (q.y * q.y + q.z * q.z));
  e.roll = std::atan2(2.0 * (q.w * q.x + q.y * q.z), 1.0 - 2.0 * (q.x * q.x + q.y * q.y));
  return e;
}

/// Inverse of quat_to_euler: q = qz(yaw) * qy(pitch) * qx(roll).
inline Quaternion euler_to_quat(const EulerAngles& e) {
  const double cy = std::cos(0.5 * e.yaw), sy = std::sin(0.5 * e.yaw);
  const double cp = std::cos(0.5 * e.pitch), sp = std::sin(0.5 * e.pitch);
  const double cr = std::cos(0.5 * e.roll), sr = std::sin(0.5 * e.roll);
  return {cy * cp * cr + sy * sp * sr,
          cy * cp * sr - sy * sp * cr,
          cy * sp * cr + sy * cp * sr,
          sy * cp * cr - cy * sp * sr};
}

}  // namespace margkit

#endif  // MARGKIT_QUATERNION_HPP
