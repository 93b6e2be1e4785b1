#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rosette/physics.hpp"

namespace rosette {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Orbit equation 1/r = (1 + eps cos(omega theta)) / (a (1 - eps^2)).
/// Perihelion sits at theta = 0.
double radius_at(const OrbitParams& params, double theta);
Point2 position_at(const OrbitParams& params, double theta);
/// d r / d theta along the orbit.
double radius_derivative_at(const OrbitParams& params, double theta);

struct TrajectorySample {
  double theta;
  double r;
  double x;
  double y;
};

inline constexpr int kDefaultSamplesPerRevolution = 4096;
inline constexpr int kMinSamplesPerRevolution = 64;
inline constexpr double kMaxWindowRevolutions = 1e6;
inline constexpr std::size_t kMaxTrajectorySamples = std::size_t{1} << 26;

/// Immutable polyline of the rosette over [theta_start, theta_end], motion
/// counterclockwise (theta increasing).
class Trajectory {
 public:
  const OrbitParams& params() const noexcept { return params_; }
  double theta_start() const noexcept { return theta_start_; }
  double theta_end() const noexcept { return theta_end_; }
  int samples_per_revolution() const noexcept { return samples_per_revolution_; }
  std::span<const TrajectorySample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  /// Prefix of this trajectory ending at `theta_cut` (clamped to the window).
  /// The cut point is appended exactly unless it coincides with a sample.
  Trajectory truncated(double theta_cut) const;

 private:
  friend Trajectory sample(const OrbitParams&, double, double, int);

  OrbitParams params_;
  double theta_start_ = 0.0;
  double theta_end_ = 0.0;
  int samples_per_revolution_ = kDefaultSamplesPerRevolution;
  std::vector<TrajectorySample> samples_;
};

/// Uniform theta grid of spacing 2 pi / samples_per_revolution starting at
/// theta_start, the end point, and every perihelion/aphelion inside the
/// window, sorted with near-duplicates (1e-12) merged.
Trajectory sample(const OrbitParams& params, double theta_start, double theta_end,
                  int samples_per_revolution = kDefaultSamplesPerRevolution);

struct Convergent {
  std::int64_t p;  ///< radial periods
  std::int64_t q;  ///< full revolutions
  double error;    ///< |1/omega - q/p|
};

struct ClosureReport {
  std::vector<Convergent> convergents;
  std::int64_t chosen_periods = 1;
  /// Signed angular mismatch 2 pi (p/omega - q) after chosen_periods periods.
  double closure_gap = 0.0;
};

inline constexpr int kMaxConvergents = 12;

/// Continued-fraction convergents q/p of 1/omega, stopping at the first one
/// whose closure gap is below `tolerance` or after kMaxConvergents terms.
ClosureReport closure_analysis(const OrbitParams& params, double tolerance);

}  // namespace rosette
