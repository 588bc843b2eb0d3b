#include "margkit/altitude.hpp"

#include <cmath>
#include <stdexcept>

namespace margkit {

namespace {

void check_pressure_range(double p) {
  if (!(p >= kBaroPressureMin && p <= kBaroPressureMax))
    throw std::out_of_range("pressure outside sensor range [10, 1200] mbar");
}

}  // namespace

double pressure_to_altitude(double pressure_mbar, double reference_mbar) {
  check_pressure_range(pressure_mbar);
  check_pressure_range(reference_mbar);
  return 44330.0 * (1.0 - std::pow(pressure_mbar / reference_mbar, 0.1903));
}

double altitude_to_pressure(double altitude_m, double reference_mbar) {
  check_pressure_range(reference_mbar);
  return reference_mbar * std::pow(1.0 - altitude_m / 44330.0, 1.0 / 0.1903);
}

Vec3 gravity_compensate(const Quaternion& q, const Vec3& accel_g) {
  const Vec3 earth = rotate_vector(q, accel_g);
  return Vec3{earth.x, earth.y, earth.z - 1.0} * kStandardGravity;
}

Vec3 dynamic_accel_body(const Quaternion& q, const Vec3& accel_g) {
  return accel_g - rotate_vector_inverse(q, {0.0, 0.0, 1.0});
}

AltitudeFilter::AltitudeFilter(double tau_s) {
  if (!(tau_s > 0.0)) throw std::invalid_argument("AltitudeFilter: tau must be positive");
  k_alt_ = 4.0 / tau_s;
  k_vel_ = 4.0 / (tau_s * tau_s);
}

AltitudeFilter AltitudeFilter::with_gains(double k_alt, double k_vel) {
  AltitudeFilter f(1.0);
  f.k_alt_ = k_alt;
  f.k_vel_ = k_vel;
  return f;
}

void AltitudeFilter::update(double baro_altitude_m, double vertical_accel_ms2, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("AltitudeFilter: dt must be positive");
  started_ = true;
  state_.vertical_velocity += vertical_accel_ms2 * dt;
  state_.altitude += state_.vertical_velocity * dt;
  const double err = baro_altitude_m - state_.altitude;
  state_.altitude += k_alt_ * err * dt;
  state_.vertical_velocity += k_vel_ * err * dt;
}

void AltitudeFilter::update_pressure(double pressure_mbar, double vertical_accel_ms2, double dt) {
  update(pressure_to_altitude(pressure_mbar, state_.reference_pressure), vertical_accel_ms2, dt);
}

void AltitudeFilter::set_reference_pressure(double p0_mbar) {
  check_pressure_range(p0_mbar);
  if (started_) {
    // Keep the estimate continuous: heights measured against the new
    // reference differ by the altitude of the new reference in the old one.
    state_.altitude -= pressure_to_altitude(p0_mbar, state_.reference_pressure);
  }
  state_.reference_pressure = p0_mbar;
}

}  // namespace margkit
