#include "rosette/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rosette/errors.hpp"

namespace rosette {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Oracle tuning. Leaves are polished by Newton; the merge tolerance folds
// the same root reached from neighbouring leaves.
constexpr double kLeafExtent = 1e-6;        // box size, units of a
constexpr double kLeafWidth = 1e-9;         // theta width, radians
constexpr double kAgreement = 1e-10;        // |P(s) - P(t)|, units of a
constexpr double kRootMerge = 1e-9;         // radians
constexpr double kMinCrossingSine = 1e-10;  // below: grazing, not a crossing
constexpr std::size_t kMaxRefineSteps = 200'000'000;

struct Box {
  double xmin, xmax, ymin, ymax;

  bool overlaps(const Box& o) const noexcept {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
  double extent() const noexcept { return std::max(xmax - xmin, ymax - ymin); }
};

// Rigorous enclosure of the arc theta in [a, b]: the arc stays inside the
// annular sector bounded by the radial range over [a, b] (r is monotone
// between apsides) and the polar angles [a, b].
Box arc_box(const OrbitParams& p, double a, double b, double ra, double rb) {
  double rlo = std::min(ra, rb);
  double rhi = std::max(ra, rb);
  const double half_period = kPi / p.omega;
  for (auto j = static_cast<std::int64_t>(std::floor(a / half_period)) + 1;; ++j) {
    const double apsis = static_cast<double>(j) * half_period;
    if (apsis >= b) break;
    if (j % 2 == 0) {
      rlo = std::min(rlo, p.r_min);
    } else {
      rhi = std::max(rhi, p.r_max);
    }
  }
  rlo *= 1.0 - 1e-13;
  rhi *= 1.0 + 1e-13;

  Box box{INFINITY, -INFINITY, INFINITY, -INFINITY};
  auto include = [&](double c, double s) {
    box.xmax = std::max(box.xmax, c >= 0 ? rhi * c : rlo * c);
    box.xmin = std::min(box.xmin, c >= 0 ? rlo * c : rhi * c);
    box.ymax = std::max(box.ymax, s >= 0 ? rhi * s : rlo * s);
    box.ymin = std::min(box.ymin, s >= 0 ? rlo * s : rhi * s);
  };
  include(std::cos(a), std::sin(a));
  include(std::cos(b), std::sin(b));
  for (auto q = static_cast<std::int64_t>(std::floor(a / kHalfPi)) + 1;; ++q) {
    if (static_cast<double>(q) * kHalfPi >= b) break;
    switch (((q % 4) + 4) % 4) {
      case 0: include(1.0, 0.0); break;
      case 1: include(0.0, 1.0); break;
      case 2: include(-1.0, 0.0); break;
      default: include(0.0, -1.0); break;
    }
  }
  const double pad = 1e-15 * rhi;
  box.xmin -= pad;
  box.xmax += pad;
  box.ymin -= pad;
  box.ymax += pad;
  return box;
}

Point2 tangent_at(const OrbitParams& p, double theta) {
  const double r = radius_at(p, theta);
  const double dr = radius_derivative_at(p, theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {dr * c - r * s, dr * s + r * c};
}

double cross(Point2 u, Point2 v) { return u.x * v.y - u.y * v.x; }
double norm(Point2 u) { return std::hypot(u.x, u.y); }

struct Arc {
  double lo, hi;
  double r_lo, r_hi;
};

struct Root {
  double s, t;
};

class Refiner {
 public:
  Refiner(const OrbitParams& p, double theta_start, double theta_end)
      : p_(p), theta_start_(theta_start), theta_end_(theta_end) {}

  void refine(Arc first, Arc second) {
    struct Job {
      Arc a, b;
      Box box_a, box_b;
    };
    std::vector<Job> stack;
    stack.push_back({first, second, box_of(first), box_of(second)});
    while (!stack.empty()) {
      Job job = stack.back();
      stack.pop_back();
      if (!job.box_a.overlaps(job.box_b)) continue;
      if (++steps_ > kMaxRefineSteps)
        throw ResourceError("oracle refinement exceeded its work budget");

      const double ea = job.box_a.extent();
      const double eb = job.box_b.extent();
      const bool small_a = ea <= kLeafExtent * p_.a || job.a.hi - job.a.lo <= kLeafWidth;
      const bool small_b = eb <= kLeafExtent * p_.a || job.b.hi - job.b.lo <= kLeafWidth;
      if (small_a && small_b) {
        polish(job.a, job.b);
        continue;
      }
      const bool split_a = !small_a && (small_b || ea >= eb);
      const Arc& whole = split_a ? job.a : job.b;
      const double mid = 0.5 * (whole.lo + whole.hi);
      const double r_mid = radius_at(p_, mid);
      const Arc left{whole.lo, mid, whole.r_lo, r_mid};
      const Arc right{mid, whole.hi, r_mid, whole.r_hi};
      if (split_a) {
        stack.push_back({left, job.b, box_of(left), job.box_b});
        stack.push_back({right, job.b, box_of(right), job.box_b});
      } else {
        stack.push_back({job.a, left, job.box_a, box_of(left)});
        stack.push_back({job.a, right, job.box_a, box_of(right)});
      }
    }
  }

  std::vector<Root> take_roots() { return std::move(roots_); }

 private:
  Box box_of(const Arc& arc) const { return arc_box(p_, arc.lo, arc.hi, arc.r_lo, arc.r_hi); }

  void polish(const Arc& a, const Arc& b) {
    double s = 0.5 * (a.lo + a.hi);
    double t = 0.5 * (b.lo + b.hi);
    for (int it = 0; it < 40; ++it) {
      const Point2 ps = position_at(p_, s);
      const Point2 pt = position_at(p_, t);
      const Point2 ds = tangent_at(p_, s);
      const Point2 dt = tangent_at(p_, t);
      // Solve [ds, -dt] (step_s, step_t) = pt - ps.
      const double det = cross(dt, ds);
      if (std::abs(det) <= 1e-14 * norm(ds) * norm(dt)) return;
      const double fx = pt.x - ps.x;
      const double fy = pt.y - ps.y;
      const double step_s = (-dt.y * fx + dt.x * fy) / det;
      const double step_t = (-ds.y * fx + ds.x * fy) / det;
      s += step_s;
      t += step_t;
      if (!std::isfinite(s) || !std::isfinite(t)) return;
      if (std::abs(step_s) + std::abs(step_t) <= 1e-15 * (1.0 + std::abs(s) + std::abs(t))) break;
    }
    const double wa = a.hi - a.lo;
    const double wb = b.hi - b.lo;
    if (s < a.lo - wa || s > a.hi + wa || t < b.lo - wb || t > b.hi + wb) return;
    if (s > t) std::swap(s, t);
    if (t - s <= kRootMerge) return;
    if (s < theta_start_ - 1e-12 || t >= theta_end_ - 1e-12) return;

    const Point2 ps = position_at(p_, s);
    const Point2 pt = position_at(p_, t);
    if (std::hypot(ps.x - pt.x, ps.y - pt.y) >= kAgreement * p_.a) return;
    const Point2 ds = tangent_at(p_, s);
    const Point2 dt = tangent_at(p_, t);
    if (std::abs(cross(ds, dt)) <= kMinCrossingSine * norm(ds) * norm(dt)) return;
    roots_.push_back({std::max(s, theta_start_), t});
  }

  const OrbitParams& p_;
  double theta_start_;
  double theta_end_;
  std::size_t steps_ = 0;
  std::vector<Root> roots_;
};

}  // namespace

std::vector<SelfIntersection> enumerate_intersections(const OrbitParams& params,
                                                      double theta_start, double theta_end) {
  if (!(theta_end > theta_start)) throw ArgumentError("intersection window is empty");
  if (!(params.omega > 0.0 && params.omega <= 1.0))
    throw ArgumentError("omega must lie in (0, 1]");

  std::vector<SelfIntersection> out;
  const double half_period = kPi / params.omega;
  const auto k_lo = static_cast<std::int64_t>(std::floor(theta_start / half_period));
  const auto k_hi = static_cast<std::int64_t>(std::ceil(theta_end / half_period));
  for (auto k = k_lo; k <= k_hi; ++k) {
    const double centre = static_cast<double>(k) * kPi / params.omega;
    for (std::int64_t m = 1;; ++m) {
      const double shift = static_cast<double>(m) * kPi;
      const double t1 = centre - shift;
      const double t2 = centre + shift;
      if (t1 < theta_start || t2 >= theta_end) break;
      SelfIntersection x;
      x.theta1 = t1;
      x.theta2 = t2;
      x.k = k;
      x.m = m;
      x.radius = radius_at(params, t1);
      x.position = position_at(params, t1);
      x.transversal =
          std::abs(std::sin(static_cast<double>(m) * kPi * params.omega)) > kTangencyThreshold;
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& l, const SelfIntersection& r) {
    return l.theta1 != r.theta1 ? l.theta1 < r.theta1 : l.theta2 < r.theta2;
  });
  return out;
}

double midpoint_identity_check(const SelfIntersection& crossing, const OrbitParams& params) {
  return std::abs(params.omega * (crossing.theta1 + crossing.theta2) / 2.0 -
                  static_cast<double>(crossing.k) * kPi);
}

std::vector<OracleCrossing> oracle_intersections(const Trajectory& trajectory) {
  const auto samples = trajectory.samples();
  if (samples.size() < 3) throw ArgumentError("oracle needs at least two segments");
  const OrbitParams& p = trajectory.params();
  const std::size_t segments = samples.size() - 1;

  std::vector<Box> boxes(segments);
  for (std::size_t i = 0; i < segments; ++i)
    boxes[i] = arc_box(p, samples[i].theta, samples[i + 1].theta, samples[i].r, samples[i + 1].r);

  // Sweep in x: a segment stays active until the sweep passes its xmax.
  std::vector<std::size_t> order(segments);
  for (std::size_t i = 0; i < segments; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return boxes[l].xmin != boxes[r].xmin ? boxes[l].xmin < boxes[r].xmin : l < r;
  });
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  std::vector<std::size_t> active;
  for (std::size_t i : order) {
    const Box& bi = boxes[i];
    std::size_t kept = 0;
    for (std::size_t j : active) {
      const Box& bj = boxes[j];
      if (bj.xmax < bi.xmin) continue;
      active[kept++] = j;
      const std::size_t lo = std::min(i, j);
      const std::size_t hi = std::max(i, j);
      if (hi - lo < 2) continue;
      if (bi.ymin <= bj.ymax && bj.ymin <= bi.ymax) {
        candidates.emplace_back(lo, hi);
        if (candidates.size() > kMaxOraclePairs)
          throw ResourceError("oracle candidate pairs exceed 1e7 after prefilter");
      }
    }
    active.resize(kept);
    active.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end());

  Refiner refiner(p, trajectory.theta_start(), trajectory.theta_end());
  for (auto [i, j] : candidates) {
    const Arc a{samples[i].theta, samples[i + 1].theta, samples[i].r, samples[i + 1].r};
    const Arc b{samples[j].theta, samples[j + 1].theta, samples[j].r, samples[j + 1].r};
    refiner.refine(a, b);
  }

  std::vector<Root> roots = refiner.take_roots();
  std::sort(roots.begin(), roots.end(),
            [](const Root& l, const Root& r) { return l.s != r.s ? l.s < r.s : l.t < r.t; });
  std::vector<OracleCrossing> out;
  for (const Root& root : roots) {
    const bool duplicate = std::any_of(out.rbegin(), out.rend(), [&](const OracleCrossing& c) {
      return std::abs(c.theta1 - root.s) <= kRootMerge && std::abs(c.theta2 - root.t) <= kRootMerge;
    });
    if (duplicate) continue;
    const Point2 ps = position_at(p, root.s);
    const Point2 pt = position_at(p, root.t);
    out.push_back({root.s, root.t, {0.5 * (ps.x + pt.x), 0.5 * (ps.y + pt.y)}});
  }
  return out;
}

OracleAgreement compare_with_oracle(const OrbitParams& params,
                                    std::span<const SelfIntersection> closed_form,
                                    std::span<const OracleCrossing> oracle) {
  OracleAgreement report;
  report.oracle_count = oracle.size();
  for (const SelfIntersection& x : closed_form) {
    if (!x.transversal) continue;
    ++report.closed_form_count;
    if (oracle.empty()) continue;
    const auto nearest = std::min_element(
        oracle.begin(), oracle.end(), [&](const OracleCrossing& l, const OracleCrossing& r) {
          return std::abs(l.theta1 - x.theta1) + std::abs(l.theta2 - x.theta2) <
                 std::abs(r.theta1 - x.theta1) + std::abs(r.theta2 - x.theta2);
        });
    report.max_theta_error =
        std::max({report.max_theta_error, std::abs(nearest->theta1 - x.theta1),
                  std::abs(nearest->theta2 - x.theta2)});
    const double gap =
        std::hypot(nearest->position.x - x.position.x, nearest->position.y - x.position.y);
    report.max_position_error = std::max(report.max_position_error, gap / params.a);
  }
  report.counts_match = report.closed_form_count == report.oracle_count;
  return report;
}

TopologyMetrics topology_metrics(const OrbitParams& params, double theta_start,
                                 double theta_end) {
  auto count_transversal = [&](double lo, double hi) {
    const auto all = enumerate_intersections(params, lo, hi);
    return static_cast<int>(
        std::count_if(all.begin(), all.end(), [](const SelfIntersection& x) { return x.transversal; }));
  };
  TopologyMetrics m;
  m.revolutions_per_period = params.revolutions_per_period;
  m.crossings_per_period = count_transversal(0.0, params.radial_period());
  m.loops_per_period = m.crossings_per_period + 1;
  m.crossings_in_window = count_transversal(theta_start, theta_end);
  return m;
}

TopologyMetrics topology_metrics(const OrbitParams& params) {
  return topology_metrics(params, 0.0, params.radial_period());
}

}  // namespace rosette
