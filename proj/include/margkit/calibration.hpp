#ifndef MARGKIT_CALIBRATION_HPP
#define MARGKIT_CALIBRATION_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "margkit/ahrs.hpp"
#include "margkit/errors.hpp"
#include "margkit/vec3.hpp"

namespace margkit {

/// Per-axis sensor corrections. Applied as
///   accel' = (accel - accel_offset) .* accel_scale   (likewise mag)
///   gyro'  = gyro - gyro_bias
struct CalibrationParams {
  Vec3 accel_offset;                 // g
  Vec3 accel_scale{1.0, 1.0, 1.0};   // dimensionless, > 0
  Vec3 mag_offset;                   // gauss
  Vec3 mag_scale{1.0, 1.0, 1.0};     // dimensionless, > 0
  Vec3 gyro_bias;                    // rad/s

  bool valid() const;
};

struct EllipsoidFit {
  Vec3 offset;
  Vec3 scale;           // normalizes semi-axes to their geometric mean
  double residual_rms;  // input units, around the fitted radius
  double radius;        // geometric-mean semi-axis, input units
};

/// Least-squares fit of the axis-aligned ellipsoid
///   a x^2 + b y^2 + c z^2 + d x + e y + f z = 1
/// via normal equations with pivoted elimination. Requires min_count samples
/// and occupancy of at least 6 of the 8 octants around the sample centroid;
/// a condition number above 1e10 raises the degeneracy error.
EllipsoidFit fit_ellipsoid(std::span<const Vec3> samples, std::size_t min_count = 100);

/// Octants around the centroid that contain at least one sample (0..8).
int octant_coverage(std::span<const Vec3> samples);

/// Component-wise mean of a verified-stationary window. Throws
/// CalibrationError{NotStationary} when any per-axis standard deviation
/// exceeds stillness_threshold, {InsufficientSamples} below 200 samples.
Vec3 gyro_bias_estimate(std::span<const Vec3> gyro_samples, double stillness_threshold = 0.02);

/// Applies corrections to one raw reading. `mag` may be null for 6-DOF input.
MargSample apply_calibration(const Vec3& gyro, const Vec3& accel, const Vec3* mag, double dt,
                             const CalibrationParams& params);

/// Inverse transform, for tests and simulators: distort(apply(x)) round-trips.
Vec3 distort_triplet(const Vec3& value, const Vec3& offset, const Vec3& scale);

/// Guided calibration session: hold still, visit the face/corner poses,
/// tumble for the magnetometer, then fit. Phases only move forward; fits run
/// at the final transition and their errors keep the session collecting.
class CalibrationSession {
 public:
  enum class Phase { CollectStationary, CollectAccelPoses, CollectMagRotations, Fitted };

  struct Config {
    std::size_t stationary_window = 500;
    double stillness_threshold = 0.02;     // rad/s per-axis std dev gate
    std::size_t accel_target = 1500;       // quasi-static accel samples wanted
    std::size_t mag_target = 1500;
    double quiet_rate_threshold = 0.3;     // rad/s, bias-corrected quasi-static gate
    std::size_t fit_retry_interval = 500;  // samples between fit attempts
  };

  explicit CalibrationSession(const Config& config = {});

  /// Feed one raw sample (gyro rad/s, accel g, mag gauss); returns the
  /// current operator prompt.
  const std::string& step(const Vec3& gyro, const Vec3& accel, const Vec3& mag);

  Phase phase() const { return phase_; }
  const std::string& prompt() const { return prompt_; }

  /// Throws CalibrationError{NotFitted} before the session completes.
  const CalibrationParams& params() const;

  /// Fit diagnostics, valid once Fitted.
  const EllipsoidFit& accel_fit() const;
  const EllipsoidFit& mag_fit() const;

  std::size_t accel_sample_count() const { return accel_samples_.size(); }
  std::size_t mag_sample_count() const { return mag_samples_.size(); }

 private:
  void try_fit();

  Config config_;
  Phase phase_ = Phase::CollectStationary;
  std::string prompt_;
  std::vector<Vec3> still_gyro_;
  std::vector<Vec3> accel_samples_;
  std::vector<Vec3> mag_samples_;
  std::size_t samples_since_fit_attempt_ = 0;
  Vec3 gyro_bias_;
  CalibrationParams params_;
  EllipsoidFit accel_fit_{};
  EllipsoidFit mag_fit_{};
  bool fitted_ = false;
};

/// Calibration file: UTF-8 text, one `key = value` per line, 15 keys
/// (accel_offset_x..z, accel_scale_x..z, mag_offset_x..z, mag_scale_x..z,
/// gyro_bias_x..z), values with >= 9 significant digits. Unknown keys are
/// rejected.
void save_calibration(const CalibrationParams& params, const std::filesystem::path& path);
CalibrationParams load_calibration(const std::filesystem::path& path);
std::string calibration_to_text(const CalibrationParams& params);
CalibrationParams calibration_from_text(const std::string& text);

}  // namespace margkit

#endif  // MARGKIT_CALIBRATION_HPP
