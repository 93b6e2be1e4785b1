#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rosette/trajectory.hpp"

namespace rosette {

/// Planar self-crossing of the rosette. Same point means equal radius and
/// polar angles congruent mod 2 pi, which pins
///   theta1 = k pi / omega - m pi,  theta2 = k pi / omega + m pi.
struct SelfIntersection {
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::int64_t k = 0;  ///< omega (theta1 + theta2) / 2 = k pi
  std::int64_t m = 0;  ///< theta2 - theta1 = 2 pi m
  Point2 position;
  double radius = 0.0;
  bool transversal = true;
};

/// |sin(m pi omega)| at or below this marks a grazing contact.
inline constexpr double kTangencyThreshold = 1e-9;

/// All (k, m >= 1) crossings with theta1 >= theta_start and
/// theta2 < theta_end, sorted by theta1 (then theta2).
std::vector<SelfIntersection> enumerate_intersections(const OrbitParams& params,
                                                      double theta_start, double theta_end);

/// |omega (theta1 + theta2) / 2 - k pi|.
double midpoint_identity_check(const SelfIntersection& crossing, const OrbitParams& params);

struct OracleCrossing {
  double theta1;
  double theta2;
  Point2 position;
};

inline constexpr std::size_t kMaxOraclePairs = 10'000'000;

/// Independent geometric search for transversal crossings between
/// non-adjacent segments of the sampled polyline. Candidates come from a
/// sweep over bounding boxes of each segment's arc; each candidate pair is
/// refined by bisecting both theta intervals and polished on the true curve
/// until the two positions agree to 1e-10 a. Does not use the closed form.
/// Throws ResourceError past kMaxOraclePairs candidate pairs.
std::vector<OracleCrossing> oracle_intersections(const Trajectory& trajectory);

struct OracleAgreement {
  std::size_t closed_form_count = 0;  ///< transversal only
  std::size_t oracle_count = 0;
  bool counts_match = false;
  double max_theta_error = 0.0;
  double max_position_error = 0.0;  ///< in units of a
};

/// Matches each transversal closed-form crossing with its nearest oracle
/// crossing (by theta1) and reports the worst disagreement.
OracleAgreement compare_with_oracle(const OrbitParams& params,
                                    std::span<const SelfIntersection> closed_form,
                                    std::span<const OracleCrossing> oracle);

struct TopologyMetrics {
  double revolutions_per_period = 1.0;
  int crossings_in_window = 0;
  int crossings_per_period = 0;
  int loops_per_period = 1;
  std::optional<int> paper_winding;
};

/// Metrics over one radial period [0, 2 pi / omega).
TopologyMetrics topology_metrics(const OrbitParams& params);
/// Same, but crossings_in_window counts transversal crossings in the given
/// window.
TopologyMetrics topology_metrics(const OrbitParams& params, double theta_start,
                                 double theta_end);

}  // namespace rosette
