#include "rosette/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rosette/errors.hpp"

namespace rosette {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMergeTolerance = 1e-12;

// cos and sin of omega*theta with the rounding error of the product folded
// back in; keeps r(theta1) == r(theta2) tight for large theta.
struct Phase {
  double cos;
  double sin;
};

Phase phase_of(const OrbitParams& p, double theta) {
  const double phi = p.omega * theta;
  const double err = std::fma(p.omega, theta, -phi);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c - s * err, s + c * err};
}

TrajectorySample make_sample(const OrbitParams& p, double theta) {
  const double r = radius_at(p, theta);
  return {theta, r, r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

double radius_at(const OrbitParams& params, double theta) {
  const Phase ph = phase_of(params, theta);
  return params.semi_latus() / (1.0 + params.epsilon * ph.cos);
}

Point2 position_at(const OrbitParams& params, double theta) {
  const double r = radius_at(params, theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

double radius_derivative_at(const OrbitParams& params, double theta) {
  const Phase ph = phase_of(params, theta);
  const double denom = 1.0 + params.epsilon * ph.cos;
  return params.semi_latus() * params.epsilon * params.omega * ph.sin / (denom * denom);
}

Trajectory sample(const OrbitParams& params, double theta_start, double theta_end,
                  int samples_per_revolution) {
  if (!std::isfinite(theta_start) || !std::isfinite(theta_end))
    throw ArgumentError("trajectory window must be finite");
  if (!(theta_end > theta_start)) throw ArgumentError("trajectory window is empty");
  if (samples_per_revolution < kMinSamplesPerRevolution)
    throw ArgumentError("samples per revolution must be >= 64");
  const double span = theta_end - theta_start;
  if (span > kMaxWindowRevolutions * kTwoPi)
    throw ResourceError("trajectory window exceeds 1e6 revolutions");

  const double step = kTwoPi / samples_per_revolution;
  const auto grid_count = static_cast<std::size_t>(std::floor(span / step)) + 1;
  const double half_period = std::numbers::pi / params.omega;
  const auto first_apsis = static_cast<std::int64_t>(std::ceil(theta_start / half_period));
  const auto last_apsis = static_cast<std::int64_t>(std::floor(theta_end / half_period));
  const std::size_t apsis_count =
      last_apsis >= first_apsis ? static_cast<std::size_t>(last_apsis - first_apsis + 1) : 0;
  if (grid_count + apsis_count + 1 > kMaxTrajectorySamples)
    throw ResourceError("trajectory would exceed the sample cap");

  // Forced points (apsides, window end) win over grid points when merged.
  struct Node {
    double theta;
    bool forced;
  };
  std::vector<Node> nodes;
  nodes.reserve(grid_count + apsis_count + 1);
  for (std::size_t i = 0; i < grid_count; ++i) {
    const double t = theta_start + static_cast<double>(i) * step;
    if (t <= theta_end) nodes.push_back({t, false});
  }
  for (auto j = first_apsis; j <= last_apsis; ++j) {
    const double t = static_cast<double>(j) * std::numbers::pi / params.omega;
    if (t >= theta_start && t <= theta_end) nodes.push_back({t, true});
  }
  nodes.push_back({theta_end, true});
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& l, const Node& r) { return l.theta < r.theta; });

  std::vector<Node> merged;
  merged.reserve(nodes.size());
  for (const Node& n : nodes) {
    if (!merged.empty() && n.theta - merged.back().theta <= kMergeTolerance) {
      if (n.forced && !merged.back().forced) merged.back() = n;
      continue;
    }
    merged.push_back(n);
  }

  Trajectory traj;
  traj.params_ = params;
  traj.theta_start_ = merged.front().theta;
  traj.theta_end_ = theta_end;
  traj.samples_per_revolution_ = samples_per_revolution;
  traj.samples_.reserve(merged.size());
  for (const Node& n : merged) traj.samples_.push_back(make_sample(params, n.theta));
  return traj;
}

Trajectory Trajectory::truncated(double theta_cut) const {
  Trajectory out = *this;
  theta_cut = std::clamp(theta_cut, theta_start_, theta_end_);
  auto keep = std::find_if(samples_.begin(), samples_.end(), [&](const TrajectorySample& s) {
    return s.theta > theta_cut - kMergeTolerance;
  });
  out.samples_.assign(samples_.begin(), keep);
  if (keep != samples_.end() && std::abs(keep->theta - theta_cut) <= kMergeTolerance) {
    out.samples_.push_back(*keep);
  } else {
    out.samples_.push_back(make_sample(params_, theta_cut));
  }
  out.theta_end_ = out.samples_.back().theta;
  return out;
}

ClosureReport closure_analysis(const OrbitParams& params, double tolerance) {
  if (!(tolerance > 0.0)) throw ArgumentError("closure tolerance must be positive");
  const double target = 1.0 / params.omega;

  ClosureReport report;
  // Standard recurrence q_n = a_n q_{n-1} + q_{n-2}, p_n likewise.
  std::int64_t q_prev = 1, q_prev2 = 0;
  std::int64_t p_prev = 0, p_prev2 = 1;
  double x = target;
  for (int n = 0; n < kMaxConvergents; ++n) {
    const double whole = std::floor(x);
    const auto term = static_cast<std::int64_t>(whole);
    const std::int64_t q = term * q_prev + q_prev2;
    const std::int64_t p = term * p_prev + p_prev2;
    q_prev2 = q_prev;
    q_prev = q;
    p_prev2 = p_prev;
    p_prev = p;

    const double pd = static_cast<double>(p);
    const double qd = static_cast<double>(q);
    report.convergents.push_back({p, q, std::abs(target - qd / pd)});
    report.chosen_periods = p;
    report.closure_gap = kTwoPi * std::fma(pd, target, -qd);
    if (std::abs(report.closure_gap) < tolerance) break;

    const double frac = x - whole;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return report;
}

}  // namespace rosette
