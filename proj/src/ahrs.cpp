#include "margkit/ahrs.hpp"

#include <cmath>
#include <stdexcept>

namespace margkit {

namespace {

constexpr double kMinVectorNorm = 1e-12;

void validate_sample(const MargSample& s) {
  if (!(s.dt > 0.0 && s.dt < 1.0)) throw std::invalid_argument("MargSample: dt must be in (0, 1)");
  if (!s.gyro.finite() || !s.accel.finite() || (s.mag && !s.mag->finite()))
    throw std::invalid_argument("MargSample: non-finite component");
}

// Accumulates J^T * f into grad for one measurement block of the Madgwick
// objective. The block is the body-frame prediction of an earth reference
// direction (rx, 0, rz) minus the normalized measurement.
void accumulate_gradient(const Quaternion& q, double rx, double rz, const Vec3& meas,
                         double grad[4]) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  const double f1 = rx * (1.0 - 2.0 * (y * y + z * z)) + 2.0 * rz * (x * z - w * y) - meas.x;
  const double f2 = 2.0 * rx * (x * y - w * z) + 2.0 * rz * (y * z + w * x) - meas.y;
  const double f3 = 2.0 * rx * (x * z + w * y) + rz * (1.0 - 2.0 * (x * x + y * y)) - meas.z;

  grad[0] += (-2.0 * rz * y) * f1 + 2.0 * (rz * x - rx * z) * f2 + (2.0 * rx * y) * f3;
  grad[1] += (2.0 * rz * z) * f1 + 2.0 * (rx * y + rz * w) * f2 + 2.0 * (rx * z - 2.0 * rz * x) * f3;
  grad[2] += (-4.0 * rx * y - 2.0 * rz * w) * f1 + 2.0 * (rx * x + rz * z) * f2 +
             2.0 * (rx * w - 2.0 * rz * y) * f3;
  grad[3] += 2.0 * (rz * x - 2.0 * rx * z) * f1 + 2.0 * (rz * y - rx * w) * f2 + (2.0 * rx * x) * f3;
}

// Horizontal/vertical split of the earth-frame flux estimate. Collapsing the
// horizontal component onto one axis confines magnetic disturbance to
// heading; it cannot tilt the estimate.
void flux_reference(const Quaternion& q, const Vec3& mag_unit, double& bx, double& bz) {
  const Vec3 h = rotate_vector(q, mag_unit);
  bx = std::hypot(h.x, h.y);
  bz = h.z;
}

}  // namespace

AhrsFilter::AhrsFilter(const FilterConfig& config) : config_(config) {
  if (config.beta < 0.0 || config.kp < 0.0 || config.ki < 0.0)
    throw std::invalid_argument("FilterConfig: gains must be non-negative");
  if (config.integral_clamp < 0.0)
    throw std::invalid_argument("FilterConfig: integral_clamp must be non-negative");
}

void AhrsFilter::reset() { state_ = FusionState{}; }

void AhrsFilter::update(const MargSample& sample) {
  validate_sample(sample);
  if (config_.algorithm == FilterAlgorithm::Mahony) {
    update_mahony(sample);
  } else {
    update_madgwick(sample);
  }
  ++state_.sample_count;
}

void AhrsFilter::integrate(const Vec3& rate, double dt) {
  const Quaternion& q = state_.q;
  const Quaternion qdot{0.5 * (-q.x * rate.x - q.y * rate.y - q.z * rate.z),
                        0.5 * (q.w * rate.x + q.y * rate.z - q.z * rate.y),
                        0.5 * (q.w * rate.y - q.x * rate.z + q.z * rate.x),
                        0.5 * (q.w * rate.z + q.x * rate.y - q.y * rate.x)};
  state_.q = quat_normalize(
      {q.w + qdot.w * dt, q.x + qdot.x * dt, q.y + qdot.y * dt, q.z + qdot.z * dt});
}

void AhrsFilter::update_mahony(const MargSample& s) {
  Vec3 err{};
  const double an = s.accel.norm();
  if (an >= kMinVectorNorm) {
    const Vec3 a = s.accel / an;
    const Vec3 v = rotate_vector_inverse(state_.q, {0.0, 0.0, 1.0});
    err += cross(a, v);
  }
  if (s.mag) {
    const double mn = s.mag->norm();
    if (mn >= kMinVectorNorm) {
      const Vec3 m = *s.mag / mn;
      double bx, bz;
      flux_reference(state_.q, m, bx, bz);
      const Vec3 w_ref = rotate_vector_inverse(state_.q, {bx, 0.0, bz});
      err += cross(m, w_ref);
    }
  }

  Vec3 rate = s.gyro;
  if (config_.ki > 0.0) {
    state_.integral_fb += err * (config_.ki * s.dt);
    const double c = config_.integral_clamp;
    state_.integral_fb.x = std::clamp(state_.integral_fb.x, -c, c);
    state_.integral_fb.y = std::clamp(state_.integral_fb.y, -c, c);
    state_.integral_fb.z = std::clamp(state_.integral_fb.z, -c, c);
    rate += state_.integral_fb;
  } else {
    state_.integral_fb = Vec3{};
  }
  rate += err * config_.kp;
  integrate(rate, s.dt);
}

void AhrsFilter::update_madgwick(const MargSample& s) {
  double grad[4] = {0.0, 0.0, 0.0, 0.0};
  bool have_correction = false;

  const double an = s.accel.norm();
  if (an >= kMinVectorNorm) {
    accumulate_gradient(state_.q, 0.0, 1.0, s.accel / an, grad);
    have_correction = true;
  }
  if (s.mag) {
    const double mn = s.mag->norm();
    if (mn >= kMinVectorNorm) {
      const Vec3 m = *s.mag / mn;
      double bx, bz;
      flux_reference(state_.q, m, bx, bz);
      accumulate_gradient(state_.q, bx, bz, m, grad);
      have_correction = true;
    }
  }

  const Quaternion& q = state_.q;
  Quaternion qdot{0.5 * (-q.x * s.gyro.x - q.y * s.gyro.y - q.z * s.gyro.z),
                  0.5 * (q.w * s.gyro.x + q.y * s.gyro.z - q.z * s.gyro.y),
                  0.5 * (q.w * s.gyro.y - q.x * s.gyro.z + q.z * s.gyro.x),
                  0.5 * (q.w * s.gyro.z + q.x * s.gyro.y - q.y * s.gyro.x)};
  if (have_correction && config_.beta > 0.0) {
    const double n =
        std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2] + grad[3] * grad[3]);
    if (n > 0.0) {
      const double scale = config_.beta / n;
      qdot.w -= scale * grad[0];
      qdot.x -= scale * grad[1];
      qdot.y -= scale * grad[2];
      qdot.z -= scale * grad[3];
    }
  }
  state_.q = quat_normalize({q.w + qdot.w * s.dt, q.x + qdot.x * s.dt, q.y + qdot.y * s.dt,
                             q.z + qdot.z * s.dt});
}

void AhrsFilter::warm_start(const Vec3& accel, const std::optional<Vec3>& mag) {
  const double an = accel.norm();
  if (an < kMinVectorNorm) return;
  const Vec3 a = accel / an;
  // Tilt: rotate the measured gravity direction onto earth +z.
  Quaternion tilt = shortest_arc(a, {0.0, 0.0, 1.0});
  // tilt maps body vectors to earth here; shortest_arc(a -> z) applied to the
  // body measurement gives its earth image, so tilt already has the
  // body->earth sense.
  Quaternion q = tilt;
  if (mag) {
    const double mn = mag->norm();
    if (mn >= kMinVectorNorm) {
      const Vec3 m_earth = rotate_vector(q, *mag / mn);
      // Rotate about earth z so the horizontal flux points along +x.
      const double yaw_err = std::atan2(m_earth.y, m_earth.x);
      const Quaternion yaw_fix = quat_from_axis_angle({0.0, 0.0, 1.0}, -yaw_err);
      q = quat_multiply(yaw_fix, q);
    }
  }
  state_.q = quat_normalize(q);
  state_.integral_fb = Vec3{};
}

}  // namespace margkit
