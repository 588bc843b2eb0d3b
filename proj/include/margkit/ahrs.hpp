#ifndef MARGKIT_AHRS_HPP
#define MARGKIT_AHRS_HPP

#include <cstdint>
#include <optional>

#include "margkit/quaternion.hpp"
#include "margkit/vec3.hpp"

namespace margkit {

/// One fusion input: body rates (rad/s), specific force (g), optional
/// magnetic field (gauss), and the time since the previous sample.
struct MargSample {
  Vec3 gyro;                 // rad/s
  Vec3 accel;                // g
  std::optional<Vec3> mag;   // gauss; absent selects the 6-DOF update
  double dt = 0.01;          // s, must be in (0, 1)
};

enum class FilterAlgorithm { Mahony, Madgwick };

struct FilterConfig {
  FilterAlgorithm algorithm = FilterAlgorithm::Mahony;
  double beta = 0.1;              // Madgwick gradient step gain
  double kp = 0.5;                // Mahony proportional gain
  double ki = 0.0;                // Mahony integral gain (gyro-bias tracking)
  double nominal_rate_hz = 100.0; // informational; dt comes from each sample
  double integral_clamp = 0.5;    // rad/s per-axis anti-windup bound
};

/// Filter state. `integral_fb` is the Mahony integral error term and doubles
/// as the gyro-bias estimate when ki > 0.
struct FusionState {
  Quaternion q;
  Vec3 integral_fb;
  std::uint64_t sample_count = 0;
};

/// Complementary attitude estimator over gyro + accel (+ mag).
///
/// Earth frame: z along the at-rest accelerometer reading, i.e. a level
/// stationary board measures accel = (0, 0, +1) g. q maps body -> earth.
/// Both algorithms normalize the accel and mag inputs, so any positive
/// scaling of either leaves the estimate unchanged. A correction term whose
/// measurement norm is below 1e-12 is skipped for that step (free fall,
/// magnetic blanking); the step degrades to gyro propagation.
class AhrsFilter {
 public:
  /// Throws std::invalid_argument on negative gains.
  explicit AhrsFilter(const FilterConfig& config = {});

  /// One filter step; marg or 6-DOF path depending on sample.mag.
  /// Throws std::invalid_argument if the sample invariants are violated.
  void update(const MargSample& sample);

  /// Optional algebraic first fix from a single accel (+ mag) pair, replacing
  /// the identity initialization and its convergence transient.
  void warm_start(const Vec3& accel, const std::optional<Vec3>& mag);

  void reset();

  const FusionState& state() const { return state_; }
  Quaternion orientation() const { return state_.q; }
  EulerAngles euler() const { return quat_to_euler(state_.q); }
  const FilterConfig& config() const { return config_; }

 private:
  void update_mahony(const MargSample& s);
  void update_madgwick(const MargSample& s);
  void integrate(const Vec3& rate, double dt);

  FilterConfig config_;
  FusionState state_;
};

}  // namespace margkit

#endif  // MARGKIT_AHRS_HPP
