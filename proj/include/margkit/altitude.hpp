#ifndef MARGKIT_ALTITUDE_HPP
#define MARGKIT_ALTITUDE_HPP

#include "margkit/quaternion.hpp"
#include "margkit/vec3.hpp"

namespace margkit {

inline constexpr double kStandardGravity = 9.80665;        // m/s^2
inline constexpr double kStandardPressure = 1013.25;       // mbar
inline constexpr double kBaroPressureMin = 10.0;           // mbar, sensor range
inline constexpr double kBaroPressureMax = 1200.0;         // mbar

/// International barometric formula, h = 44330 * (1 - (p/p0)^0.1903) meters.
/// Throws std::out_of_range when either pressure is outside the sensor range.
double pressure_to_altitude(double pressure_mbar, double reference_mbar);

/// Inverse of pressure_to_altitude (simulator side).
double altitude_to_pressure(double altitude_m, double reference_mbar);

/// Earth-frame dynamic acceleration in m/s^2: rotate the specific-force
/// reading (g) into the earth frame, subtract (0,0,1) g, scale by 9.80665.
/// A level stationary board yields (0,0,0); the z component is up-positive.
Vec3 gravity_compensate(const Quaternion& q, const Vec3& accel_g);

/// Body-frame dynamic acceleration in g (tap detection input).
Vec3 dynamic_accel_body(const Quaternion& q, const Vec3& accel_g);

struct AltitudeState {
  double altitude = 0.0;            // m, relative to reference_pressure
  double vertical_velocity = 0.0;   // m/s
  double reference_pressure = kStandardPressure;  // mbar
};

/// Predictor-corrector complementary filter fusing barometric altitude with
/// vertical dynamic acceleration. The inertial path integrates at the sample
/// rate; the baro error pulls altitude and velocity back with gains derived
/// from one time constant tau: k_alt = 4/tau, k_vel = 4/tau^2 (critically
/// damped at natural frequency 2/tau).
class AltitudeFilter {
 public:
  explicit AltitudeFilter(double tau_s = 1.0);

  /// Explicit feedback gains; zero gains reduce the filter to pure double
  /// integration of the vertical acceleration.
  static AltitudeFilter with_gains(double k_alt, double k_vel);

  /// One step with a pre-converted barometric altitude (m).
  void update(double baro_altitude_m, double vertical_accel_ms2, double dt);

  /// One step from a raw pressure reading; converts against the current
  /// reference. Throws std::out_of_range on out-of-range pressure.
  void update_pressure(double pressure_mbar, double vertical_accel_ms2, double dt);

  /// Re-bases subsequent altitudes on p0. When the filter is mid-run the
  /// state shifts so the estimate stays continuous in the new reference.
  void set_reference_pressure(double p0_mbar);

  /// set_reference_pressure at the given current pressure: altitude reads 0
  /// there afterwards.
  void tare(double current_pressure_mbar) { set_reference_pressure(current_pressure_mbar); }

  const AltitudeState& state() const { return state_; }
  double altitude() const { return state_.altitude; }
  double vertical_velocity() const { return state_.vertical_velocity; }

 private:
  AltitudeState state_;
  double k_alt_ = 4.0;
  double k_vel_ = 4.0;
  bool started_ = false;
};

}  // namespace margkit

#endif  // MARGKIT_ALTITUDE_HPP
