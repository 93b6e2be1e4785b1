#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rosette/errors.hpp"
#include "rosette/physics.hpp"
#include "rosette/trajectory.hpp"

using namespace rosette;

namespace {

constexpr double kPi = std::numbers::pi;

OrbitParams params_for(int z, double alpha = kCodata2018Alpha) {
  return orbit_params(make_ion(z, {}, PhysicalConstants::with_alpha(alpha)));
}

// Distance from x to the nearest integer.
double frac_dist(double x) { return std::abs(x - std::round(x)); }

}  // namespace

TEST_CASE("radius stays between the apsides") {
  for (int z : {1, 92, 118, 135}) {
    const OrbitParams p = params_for(z);
    CHECK(radius_at(p, 0.0) == doctest::Approx(p.r_min).epsilon(1e-14));
    CHECK(radius_at(p, kPi / p.omega) == doctest::Approx(p.r_max).epsilon(1e-14));
    for (int i = 0; i < 2000; ++i) {
      const double r = radius_at(p, i * 0.0137);
      CHECK(r >= p.r_min * (1 - 1e-14));
      CHECK(r <= p.r_max * (1 + 1e-14));
    }
  }
}

TEST_CASE("aphelion symmetry and periodicity") {
  for (int z = 1; z <= 136; ++z) {
    CAPTURE(z);
    const OrbitParams p = params_for(z);
    const double half = kPi / p.omega;
    const double period = 2 * half;
    for (double x : {0.1, 0.7, 1.3, 2.9}) {
      const double a = radius_at(p, half + x);
      const double b = radius_at(p, half - x);
      CHECK(std::abs(a - b) <= 1e-12 * a);
      const double c = radius_at(p, x + period);
      const double d = radius_at(p, x);
      CHECK(std::abs(c - d) <= 1e-12 * d);
    }
  }
}

TEST_CASE("radius derivative matches a central difference") {
  const OrbitParams p = params_for(118);
  for (double t : {0.3, 2.0, 5.5, 11.0}) {
    const double h = 1e-6;
    const double fd = (radius_at(p, t + h) - radius_at(p, t - h)) / (2 * h);
    CHECK(radius_derivative_at(p, t) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("sample includes the window ends and every apsis") {
  const OrbitParams p = params_for(122);
  const double end = 2 * p.radial_period();
  const Trajectory t = sample(p, 0.0, end, 256);
  const auto s = t.samples();
  REQUIRE(s.size() > 2);
  CHECK(s.front().theta == 0.0);
  CHECK(s.back().theta == end);
  CHECK(std::is_sorted(s.begin(), s.end(),
                       [](const auto& a, const auto& b) { return a.theta < b.theta; }));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i].theta - s[i - 1].theta > 1e-12);
  for (int j = 0; j <= 4; ++j) {
    const double apsis = j * kPi / p.omega;
    const bool found = std::any_of(s.begin(), s.end(),
                                   [&](const auto& x) { return std::abs(x.theta - apsis) < 1e-15 * (1 + apsis); });
    CHECK(found);
  }
  for (const auto& x : s) {
    CHECK(x.r == radius_at(p, x.theta));
    CHECK(std::hypot(x.x, x.y) == doctest::Approx(x.r).epsilon(1e-14));
  }
}

TEST_CASE("sample guards") {
  const OrbitParams p = params_for(92);
  CHECK_THROWS_AS(sample(p, 1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(sample(p, 2.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(sample(p, 0.0, INFINITY), ArgumentError);
  CHECK_THROWS_AS(sample(p, 0.0, 1.0, 63), ArgumentError);
  CHECK_THROWS_AS(sample(p, 0.0, 2 * kPi * 2e6), ResourceError);
  CHECK_THROWS_AS(sample(p, 0.0, 2 * kPi * 1e5, 4096), ResourceError);
}

TEST_CASE("truncation is a prefix ending at the cut") {
  const OrbitParams p = params_for(118);
  const Trajectory t = sample(p, 0.0, p.radial_period(), 512);
  const Trajectory half = t.truncated(5.0);
  CHECK(half.theta_end() == 5.0);
  CHECK(half.samples().back().theta == 5.0);
  for (std::size_t i = 0; i + 1 < half.size(); ++i)
    CHECK(half.samples()[i].theta == t.samples()[i].theta);
  const Trajectory full = t.truncated(t.theta_end());
  REQUIRE(full.size() == t.size());
  CHECK(std::equal(full.samples().begin(), full.samples().end(), t.samples().begin(),
                   [](const auto& a, const auto& b) { return a.theta == b.theta && a.x == b.x; }));
}

TEST_CASE("non-relativistic orbit closes after one revolution") {
  const OrbitParams p = params_for(1, 0.0);
  const Trajectory t = sample(p, 0.0, p.radial_period());
  const auto s = t.samples();
  const double gap = std::hypot(s.back().x - s.front().x, s.back().y - s.front().y);
  CHECK(gap < 1e-12 * p.a);
  const ClosureReport c = closure_analysis(p, 1e-12);
  CHECK(c.chosen_periods == 1);
  CHECK(c.closure_gap == 0.0);
}

TEST_CASE("closure convergents are best approximations (brute force)") {
  for (int z : {92, 112, 118, 122, 129, 132, 135}) {
    CAPTURE(z);
    const OrbitParams p = params_for(z);
    const double x = 1.0 / p.omega;
    const ClosureReport c = closure_analysis(p, 1e-300);
    REQUIRE(!c.convergents.empty());
    CHECK(c.convergents.size() <= kMaxConvergents);
    CHECK(c.convergents.front().p == 1);
    CHECK(c.convergents.front().q == static_cast<std::int64_t>(std::floor(x)));
    for (const Convergent& k : c.convergents) {
      if (k.p < 2 || k.p > 200000) continue;
      CAPTURE(k.p);
      // No smaller period returns closer to a whole number of revolutions.
      const double here = std::abs(k.p * x - k.q);
      double best = INFINITY;
      for (std::int64_t q = 1; q < k.p; ++q) best = std::min(best, frac_dist(q * x));
      CHECK(here < best);
      CHECK(k.error == doctest::Approx(std::abs(x - double(k.q) / double(k.p))).epsilon(1e-9));
    }
    const Convergent& last = c.convergents.back();
    CHECK(c.chosen_periods == last.p);
  }
}

TEST_CASE("closure stops at the first convergent inside the tolerance") {
  const OrbitParams p = params_for(118);
  const ClosureReport loose = closure_analysis(p, 1.0);
  CHECK(loose.convergents.size() <= 2);
  CHECK(std::abs(loose.closure_gap) < 1.0);
  CHECK_THROWS_AS(closure_analysis(p, 0.0), ArgumentError);
}
