#include "rosette/physics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rosette/errors.hpp"

namespace rosette {

namespace {

// sqrt(n_theta^2 - (alpha Z)^2), factored to keep precision near the bound.
double reduced_azimuthal(const IonSpec& ion) {
  const double nt = ion.state.n_theta;
  const double az = ion.alpha_z();
  if (!(az < nt)) {
    std::ostringstream msg;
    msg << "supercritical charge: alpha*Z = " << az << " >= n_theta = " << ion.state.n_theta
        << " (no real orbit)";
    throw DomainError(msg.str());
  }
  return std::sqrt((nt - az) * (nt + az));
}

void require_structure(const IonSpec& ion) {
  if (ion.z < 1) throw ArgumentError("nuclear charge Z must be >= 1");
  if (ion.state.n_theta < 1) throw ArgumentError("n_theta must be >= 1");
  if (ion.state.n_r < 0) throw ArgumentError("n_r must be >= 0");
  const double alpha = ion.constants.alpha;
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in [0, 1)");
}

}  // namespace

PhysicalConstants PhysicalConstants::with_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in [0, 1)");
  return PhysicalConstants{alpha};
}

IonSpec make_ion(int z, QuantumState state, PhysicalConstants constants) {
  IonSpec ion{z, state, constants};
  require_structure(ion);
  return ion;
}

double OrbitParams::radial_period() const noexcept { return 2.0 * std::numbers::pi / omega; }

double orbit_omega(const IonSpec& ion) {
  require_structure(ion);
  return reduced_azimuthal(ion) / ion.state.n_theta;
}

double energy_ratio(const IonSpec& ion) {
  require_structure(ion);
  const double s = reduced_azimuthal(ion);
  const double az = ion.alpha_z();
  const double d = ion.state.n_r + s;
  return 1.0 / std::sqrt(1.0 + (az * az) / (d * d));
}

double eccentricity(const IonSpec& ion) {
  require_structure(ion);
  const double s = reduced_azimuthal(ion);
  const double nr = ion.state.n_r;
  return std::sqrt(nr) * std::sqrt(nr + 2.0 * s) / (nr + s);
}

double semi_major_axis(const IonSpec& ion) {
  require_structure(ion);
  const double s = reduced_azimuthal(ion);
  const double az = ion.alpha_z();
  const double d = ion.state.n_r + s;
  return PhysicalConstants::bohr_radius / ion.z * d * std::sqrt(az * az + d * d);
}

OrbitParams orbit_params(const IonSpec& ion) {
  OrbitParams p;
  p.omega = orbit_omega(ion);
  p.epsilon = eccentricity(ion);
  p.a = semi_major_axis(ion);
  p.energy_ratio = energy_ratio(ion);
  p.r_min = p.a * (1.0 - p.epsilon);
  p.r_max = p.a * (1.0 + p.epsilon);
  p.revolutions_per_period = 1.0 / p.omega;
  p.delta_theta = 2.0 * std::numbers::pi * (p.revolutions_per_period - 1.0);
  return p;
}

ValidityReport validate(const IonSpec& ion) noexcept {
  ValidityReport report;
  report.alpha_z = ion.alpha_z();
  report.extended = ion.state.n_r == 0;
  report.critical_charge = ion.constants.alpha > 0.0
                               ? ion.state.n_theta / ion.constants.alpha
                               : std::numeric_limits<double>::infinity();
  try {
    require_structure(ion);
  } catch (const ArgumentError& e) {
    report.status = Validity::malformed;
    report.message = e.what();
    return report;
  }
  if (!(report.alpha_z < ion.state.n_theta)) {
    report.status = Validity::supercritical;
    report.message = "alpha*Z >= n_theta: no real orbit";
  } else if (report.extended) {
    report.status = Validity::extended;
    report.message = "n_r = 0 circular-orbit extension";
  } else {
    report.status = Validity::valid;
  }
  return report;
}

const char* to_string(Validity v) noexcept {
  switch (v) {
    case Validity::valid: return "valid";
    case Validity::extended: return "extended";
    case Validity::supercritical: return "supercritical";
    case Validity::malformed: return "malformed";
  }
  return "unknown";
}

}  // namespace rosette
