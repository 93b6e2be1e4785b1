#pragma once

// Relativistic Kepler orbit of a hydrogen-like ion in the Bohr-Sommerfeld
// model. Atomic units throughout: lengths in Bohr radii, angles in radians.

#include <string>

namespace rosette {

/// CODATA 2018 fine-structure constant.
inline constexpr double kCodata2018Alpha = 7.2973525693e-3;

struct PhysicalConstants {
  double alpha = kCodata2018Alpha;
  /// Lengths are measured in Bohr radii, so a0 is 1 by definition.
  static constexpr double bohr_radius = 1.0;

  /// Throws ArgumentError unless 0 <= alpha < 1.
  static PhysicalConstants with_alpha(double alpha);
};

struct QuantumState {
  int n_r = 1;      ///< radial quantum number, >= 0
  int n_theta = 1;  ///< azimuthal quantum number, >= 1

  /// n_r = 0 is the circular-orbit extension of the positive-integer model.
  bool extended() const noexcept { return n_r == 0; }
};

struct IonSpec {
  int z = 1;
  QuantumState state;
  PhysicalConstants constants;

  double alpha_z() const noexcept { return constants.alpha * z; }
};

/// Builds an IonSpec after checking the structural preconditions
/// (z >= 1, n_r >= 0, n_theta >= 1, 0 <= alpha < 1). Does not check the
/// supercritical bound; the orbit functions do that.
IonSpec make_ion(int z, QuantumState state = {}, PhysicalConstants constants = {});

struct OrbitParams {
  double omega = 1.0;
  double epsilon = 0.0;
  double a = 1.0;
  double energy_ratio = 1.0;
  double r_min = 1.0;
  double r_max = 1.0;
  double delta_theta = 0.0;
  double revolutions_per_period = 1.0;

  /// a(1 - eps^2), the conic's semi-latus rectum.
  double semi_latus() const noexcept { return a * (1.0 - epsilon) * (1.0 + epsilon); }
  /// theta interval between successive perihelia, 2 pi / omega.
  double radial_period() const noexcept;
};

double orbit_omega(const IonSpec& ion);
double energy_ratio(const IonSpec& ion);
double eccentricity(const IonSpec& ion);
double semi_major_axis(const IonSpec& ion);
OrbitParams orbit_params(const IonSpec& ion);

enum class Validity { valid, extended, supercritical, malformed };

struct ValidityReport {
  Validity status = Validity::valid;
  bool extended = false;
  double alpha_z = 0.0;
  /// n_theta / alpha; +infinity when alpha is zero.
  double critical_charge = 0.0;
  std::string message;
};

/// Total classification of an input; never throws.
ValidityReport validate(const IonSpec& ion) noexcept;

const char* to_string(Validity v) noexcept;

}  // namespace rosette
