#include "scp/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scp/errors.hpp"

namespace scp {
namespace {

constexpr double kThresholdSlack = 1e-9;
constexpr double kDiscriminantTolerance = 1e-9;
constexpr double kUniformBandwidth = 1e12;
constexpr double kFixedPointScale = 1152921504606846976.0;  // 2^60
constexpr std::size_t kNeighborFloor = 25;
constexpr std::size_t kNeighborsPerPoint = 15;
constexpr double kRadiusTolerance = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must lie in (0, 1)");
  }
}

void check_target(Point target) {
  if (!std::isfinite(target.x) || !std::isfinite(target.y)) {
    throw InvalidArgument("target location must be finite");
  }
}

// Integer weights so that level sums are exact and order independent. With
// uniform weights each member counts 1 out of n + 1.
struct LevelUnits {
  std::vector<std::int64_t> units;  // bag members, then self
  double denominator;

  explicit LevelUnits(const KernelWeights& w) : units(w.weights.size()) {
    if (w.uniform) {
      std::fill(units.begin(), units.end(), 1);
      denominator = static_cast<double>(w.weights.size());
    } else {
      for (std::size_t i = 0; i < units.size(); ++i) {
        units[i] = std::llround(w.weights[i] * kFixedPointScale);
      }
      denominator = kFixedPointScale;
    }
  }

  std::int64_t self() const { return units.back(); }
  double level(std::int64_t total) const {
    return std::min(1.0, static_cast<double>(total) / denominator);
  }
};

std::vector<Point> augmented_locations(const SpatialDataset& data,
                                       std::span<const std::size_t> members, Point target) {
  std::vector<Point> out;
  out.reserve(members.size() + 1);
  for (std::size_t m : members) {
    out.push_back(data.locations[m]);
  }
  out.push_back(target);
  return out;
}

std::vector<double> member_responses(const SpatialDataset& data,
                                     std::span<const std::size_t> members) {
  std::vector<double> out;
  out.reserve(members.size() + 1);
  for (std::size_t m : members) {
    out.push_back(data.responses[m]);
  }
  return out;
}

void check_bag(const SpatialDataset& data, const ConformalBag& bag) {
  if (bag.weights.weights.size() != bag.members.size() + 1) {
    throw InvalidArgument("conformal bag: need one weight per member plus the target");
  }
  for (std::size_t m : bag.members) {
    if (m >= data.size()) {
      throw InvalidArgument("conformal bag: member index out of range");
    }
  }
}

AugmentedSystem bag_system(const SpatialDataset& data, Point target, const MaternParams& params,
                           std::span<const std::size_t> members) {
  const auto locations = augmented_locations(data, members, target);
  const auto responses = member_responses(data, members);
  const PrecisionFactor factor(covariance_matrix(locations, params));
  std::vector<double> padded(responses);
  padded.push_back(0.0);
  return augmented_system(factor, padded, members.size());
}

SampledContour scan_bag(const SpatialDataset& data, Point target, const MaternParams& params,
                        const NonConformity& measure, std::span<const double> candidates,
                        std::span<const std::size_t> members, const KernelWeights& weights) {
  if (candidates.empty() || !std::is_sorted(candidates.begin(), candidates.end())) {
    throw InvalidArgument("grid_scan_contour: candidates must be nonempty and sorted");
  }
  if (measure.kind == NonConformity::Kind::user_supplied && !measure.evaluator) {
    throw InvalidArgument("grid_scan_contour: user-supplied measure without an evaluator");
  }
  const std::size_t n = members.size();
  const auto locations = augmented_locations(data, members, target);
  std::vector<double> responses = member_responses(data, members);
  responses.push_back(0.0);

  Eigen::MatrixXd q;
  Eigen::VectorXd q_diag;
  if (measure.closed_form()) {
    q = PrecisionFactor(covariance_matrix(locations, params)).dense().matrix();
    q_diag = q.diagonal();
  }
  const LevelUnits units(weights);
  SampledContour out;
  out.candidates.assign(candidates.begin(), candidates.end());
  out.levels.reserve(candidates.size());
  out.weights = weights;
  std::vector<double> scores(n + 1);
  for (double y : candidates) {
    responses.back() = y;
    if (measure.closed_form()) {
      const Eigen::Map<const Eigen::VectorXd> z(responses.data(),
                                                static_cast<Eigen::Index>(n + 1));
      const Eigen::VectorXd qz = q * z;
      for (std::size_t i = 0; i <= n; ++i) {
        const double e = qz(static_cast<Eigen::Index>(i)) /
                         std::sqrt(q_diag(static_cast<Eigen::Index>(i)));
        scores[i] = measure.kind == NonConformity::Kind::squared_residual ? e * e : std::abs(e);
      }
    } else {
      const BagView bag{locations, responses};
      for (std::size_t i = 0; i <= n; ++i) {
        scores[i] = measure.evaluator(bag, i);
      }
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (scores[i] >= scores[n]) {
        total += units.units[i];
      }
    }
    out.levels.push_back(units.level(total));
  }
  return out;
}

}  // namespace

double conformal_threshold(std::size_t n, double alpha) {
  check_alpha(alpha);
  const double m = static_cast<double>(n) + 1.0;
  return std::floor(m * alpha + kThresholdSlack) / m;
}

double AugmentedSystem::score(std::size_t i, double y) const {
  const auto k = static_cast<Eigen::Index>(i);
  const double r = partial(k) + q_cross(k) * y;
  return r * r / q_diag(k);
}

double AugmentedSystem::target_score(double y) const {
  const double r = target_partial + q_target * y;
  return r * r / q_target;
}

AugmentedSystem augmented_system(const PrecisionMatrix& q, std::span<const double> responses) {
  const auto n = static_cast<Eigen::Index>(responses.size());
  if (q.dim() != n + 1) {
    throw InvalidArgument("augmented_system: precision must have one more row than responses");
  }
  const Eigen::Map<const Eigen::VectorXd> y(responses.data(), n);
  const auto& m = q.matrix();
  AugmentedSystem s;
  s.q_diag = m.diagonal().head(n);
  s.q_cross = m.col(n).head(n);
  s.partial = m.topLeftCorner(n, n) * y;
  s.q_target = m(n, n);
  s.target_partial = s.q_cross.dot(y);
  return s;
}

AugmentedSystem augmented_system(const PrecisionFactor& factor, std::span<const double> responses,
                                 std::size_t target) {
  const Eigen::Index dim = factor.dim();
  if (static_cast<Eigen::Index>(responses.size()) != dim ||
      static_cast<Eigen::Index>(target) >= dim) {
    throw InvalidArgument("augmented_system: response count or target index out of range");
  }
  const auto t = static_cast<Eigen::Index>(target);
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(responses.data(), dim);
  y(t) = 0.0;
  const Eigen::VectorXd qy = factor.apply(y);
  const Eigen::VectorXd col = factor.column(t);
  const Eigen::Index n = dim - 1;

  AugmentedSystem s;
  s.q_diag.resize(n);
  s.q_cross.resize(n);
  s.partial.resize(n);
  for (Eigen::Index i = 0, k = 0; i < dim; ++i) {
    if (i == t) {
      continue;
    }
    s.q_diag(k) = factor.diagonal()(i);
    s.q_cross(k) = col(i);
    s.partial(k) = qy(i);
    ++k;
  }
  s.q_target = factor.diagonal()(t);
  s.target_partial = qy(t);
  return s;
}

QuadraticBreakpoints quadratic_breakpoints(const AugmentedSystem& system, std::size_t i) {
  if (i >= system.size()) {
    throw InvalidArgument("quadratic_breakpoints: index out of range");
  }
  const auto k = static_cast<Eigen::Index>(i);
  const double qii = system.q_diag(k);
  const double qit = system.q_cross(k);
  const double qtt = system.q_target;
  const double ri = system.partial(k);
  const double rt = system.target_partial;

  QuadraticBreakpoints out;
  out.w = qit * qit / qii - qtt;
  out.v = 2.0 * ri * qit / qii - 2.0 * rt;
  out.u = ri * ri / qii - rt * rt / qtt;
  if (!(out.w < 0.0) || !(qii > 0.0) || !(qtt > 0.0)) {
    throw NumericalFault("quadratic_breakpoints: leading coefficient is not negative for index " +
                         std::to_string(i));
  }
  const double disc = out.v * out.v - 4.0 * out.u * out.w;
  const double disc_scale = out.v * out.v + std::abs(4.0 * out.u * out.w);
  if (disc < -kDiscriminantTolerance * disc_scale) {
    throw NumericalFault("quadratic_breakpoints: negative discriminant for index " +
                         std::to_string(i));
  }

  // delta_i - delta_t = (A - B)(A + B) with A = (r_i + q_it y)/s, B = (r_t + q_tt y)/c.
  // A - B is decreasing and A + B increasing in y, so each factor has one
  // root and the nonnegative set is the closed interval between them. The
  // slope that can cancel is rewritten as -w / (other slope).
  const double s = std::sqrt(qii);
  const double c = std::sqrt(qtt);
  const double ratio = qit / s;
  const double down = ratio > 0.0 ? -out.w / (c + ratio) : c - ratio;  // c - q_it/s
  const double up = ratio < 0.0 ? -out.w / (c - ratio) : c + ratio;    // c + q_it/s
  const double y1 = (ri / s - rt / c) / down;
  const double y2 = -(ri / s + rt / c) / up;
  out.interval = {std::min(y1, y2), std::max(y1, y2)};
  return out;
}

QuadraticBreakpoints quadratic_breakpoints(const PrecisionMatrix& q,
                                           std::span<const double> responses, std::size_t i) {
  return quadratic_breakpoints(augmented_system(q, responses), i);
}

std::vector<Interval> breakpoint_intervals(const AugmentedSystem& system) {
  std::vector<Interval> out(system.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = quadratic_breakpoints(system, i).interval;
  }
  return out;
}

KernelWeights uniform_weights(std::size_t n) {
  KernelWeights w;
  w.bandwidth = kInf;
  w.weights.assign(n + 1, 1.0 / static_cast<double>(n + 1));
  w.uniform = true;
  return w;
}

KernelWeights kernel_weights(std::span<const double> distances, double bandwidth) {
  if (!(bandwidth > 0.0) || std::isnan(bandwidth)) {
    throw InvalidArgument("kernel_weights: bandwidth must be > 0");
  }
  for (double d : distances) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw InvalidArgument("kernel_weights: distances must be finite and >= 0");
    }
  }
  KernelWeights w;
  if (bandwidth >= kUniformBandwidth) {
    w = uniform_weights(distances.size());
    w.bandwidth = bandwidth;
    return w;
  }
  w.bandwidth = bandwidth;
  w.weights.resize(distances.size() + 1);
  bool all_one = true;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double z = distances[i] / bandwidth;
    w.weights[i] = std::exp(-0.5 * z * z);
    all_one = all_one && w.weights[i] == 1.0;
  }
  if (all_one) {
    w = uniform_weights(distances.size());
    w.bandwidth = bandwidth;
    return w;
  }
  w.weights.back() = 1.0;
  // Sorted ascending before summing so the total does not depend on the
  // order the neighbours were listed in.
  std::vector<double> sorted(w.weights);
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  for (double& v : w.weights) {
    v /= total;
  }
  w.uniform = false;
  return w;
}

PlausibilityContour::PlausibilityContour(std::vector<double> breakpoints,
                                         std::vector<double> point_levels,
                                         std::vector<double> segment_levels,
                                         KernelWeights weights)
    : breakpoints_(std::move(breakpoints)),
      point_levels_(std::move(point_levels)),
      segment_levels_(std::move(segment_levels)),
      weights_(std::move(weights)) {
  if (point_levels_.size() != breakpoints_.size() ||
      segment_levels_.size() != breakpoints_.size() + 1) {
    throw InvalidArgument("PlausibilityContour: inconsistent level counts");
  }
}

double PlausibilityContour::level(double y) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), y);
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (it != breakpoints_.end() && *it == y) {
    return point_levels_[k];
  }
  return segment_levels_[k];
}

PlausibilityContour contour_from_breakpoints(std::span<const Interval> intervals,
                                             const KernelWeights& weights) {
  if (weights.weights.size() != intervals.size() + 1) {
    throw InvalidArgument("contour_from_breakpoints: need one weight per interval plus self");
  }
  std::vector<double> points;
  points.reserve(2 * intervals.size());
  for (const Interval& iv : intervals) {
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper) || iv.lower > iv.upper) {
      throw InvalidArgument("contour_from_breakpoints: intervals must be finite and ordered");
    }
    points.push_back(iv.lower);
    points.push_back(iv.upper);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const LevelUnits units(weights);
  const std::size_t k = points.size();
  // Difference arrays: an interval [a, b] covers breakpoints a..b and the open
  // segments strictly between them.
  std::vector<std::int64_t> point_diff(k + 1, 0);
  std::vector<std::int64_t> segment_diff(k + 2, 0);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto ia = static_cast<std::size_t>(
        std::lower_bound(points.begin(), points.end(), intervals[i].lower) - points.begin());
    const auto ib = static_cast<std::size_t>(
        std::lower_bound(points.begin(), points.end(), intervals[i].upper) - points.begin());
    point_diff[ia] += units.units[i];
    point_diff[ib + 1] -= units.units[i];
    segment_diff[ia + 1] += units.units[i];
    segment_diff[ib + 1] -= units.units[i];
  }
  std::vector<double> point_levels(k);
  std::vector<double> segment_levels(k + 1);
  std::int64_t running = units.self();
  for (std::size_t j = 0; j < k; ++j) {
    running += point_diff[j];
    point_levels[j] = units.level(running);
  }
  running = units.self();
  for (std::size_t j = 0; j <= k; ++j) {
    running += segment_diff[j];
    segment_levels[j] = units.level(running);
  }
  return PlausibilityContour(std::move(points), std::move(point_levels),
                             std::move(segment_levels), weights);
}

bool PredictionSet::contains(double y) const {
  if (unbounded) {
    return true;
  }
  return std::any_of(components.begin(), components.end(),
                     [y](const Interval& c) { return c.contains(y); });
}

PredictionSet upper_level_set(const PlausibilityContour& contour, double alpha, double threshold) {
  PredictionSet set;
  set.alpha = alpha;
  set.threshold = threshold;
  const auto& segs = contour.segment_levels();
  if (segs.front() >= threshold || segs.back() >= threshold) {
    set.unbounded = true;
    set.components = {{-kInf, kInf}};
    set.hull = {-kInf, kInf};
    return set;
  }
  // A breakpoint's level is at least that of both neighbouring segments, so
  // every component starts and ends on a breakpoint.
  const auto& bp = contour.breakpoints();
  const auto& pts = contour.point_levels();
  std::optional<double> open;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    if (pts[j] < threshold) {
      continue;
    }
    if (!open) {
      open = bp[j];
    }
    if (segs[j + 1] < threshold) {
      set.components.push_back({*open, bp[j]});
      open.reset();
    }
  }
  if (!set.components.empty()) {
    set.hull = {set.components.front().lower, set.components.back().upper};
  }
  return set;
}

PredictionSet upper_level_set(const SampledContour& contour, double alpha, double threshold) {
  PredictionSet set;
  set.alpha = alpha;
  set.threshold = threshold;
  if (!contour.weights.weights.empty() && contour.weights.self_weight() >= threshold) {
    set.unbounded = true;
    set.components = {{-kInf, kInf}};
    set.hull = {-kInf, kInf};
    return set;
  }
  std::optional<double> open;
  const std::size_t n = contour.candidates.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (contour.levels[j] < threshold) {
      continue;
    }
    if (!open) {
      open = contour.candidates[j];
    }
    if (j + 1 == n || contour.levels[j + 1] < threshold) {
      set.components.push_back({*open, contour.candidates[j]});
      open.reset();
    }
  }
  if (!set.components.empty()) {
    set.hull = {set.components.front().lower, set.components.back().upper};
  }
  return set;
}

ConformalBag global_bag(std::size_t n) {
  ConformalBag bag;
  bag.members.resize(n);
  std::iota(bag.members.begin(), bag.members.end(), std::size_t{0});
  bag.weights = uniform_weights(n);
  return bag;
}

ConformalBag nearest_bag(std::span<const Point> locations, Point target, std::size_t m) {
  if (m < 1 || m > locations.size()) {
    throw InvalidArgument("nearest_bag: neighbour count must lie in [1, n]");
  }
  ConformalBag bag;
  bag.members = nearest_indices(locations, target, m);
  // Index order, so that a full neighbourhood reproduces the global bag bit for bit.
  std::sort(bag.members.begin(), bag.members.end());
  bag.weights = uniform_weights(m);
  return bag;
}

ConformalBag smoothed_bag(std::span<const Point> locations, Point target, double bandwidth,
                          std::size_t m) {
  if (m < 1 || m > locations.size()) {
    throw InvalidArgument("smoothed_bag: neighbour count must lie in [1, n]");
  }
  ConformalBag bag;
  bag.members = nearest_indices(locations, target, m);
  std::sort(bag.members.begin(), bag.members.end());
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    d[i] = distance(locations[bag.members[i]], target);
  }
  bag.weights = kernel_weights(d, bandwidth);
  return bag;
}

std::size_t choose_neighborhood_size(std::span<const Point> locations, Point target,
                                     double bandwidth, const NeighborTable& table,
                                     std::optional<std::size_t> exclude) {
  if (!(bandwidth > 0.0) || std::isnan(bandwidth)) {
    throw InvalidArgument("choose_neighborhood_size: bandwidth must be > 0");
  }
  if (table.size() != locations.size()) {
    throw InvalidArgument("choose_neighborhood_size: neighbour table does not match locations");
  }
  const std::size_t n = locations.size() - (exclude ? 1 : 0);
  const double inner = 4.0 * bandwidth * bandwidth;
  const double slack = 1.0 + kRadiusTolerance;
  double radius2 = inner;
  for (std::size_t j = 0; j < locations.size(); ++j) {
    if (j == exclude || squared_distance(locations[j], target) > inner * slack) {
      continue;
    }
    std::size_t taken = 0;
    for (std::size_t q : table.neighbors(j)) {
      if (q == exclude) {
        continue;
      }
      radius2 = std::max(radius2, squared_distance(locations[q], target));
      if (++taken == kNeighborsPerPoint) {
        break;
      }
    }
  }
  std::size_t count = 0;
  for (std::size_t j = 0; j < locations.size(); ++j) {
    if (j != exclude && squared_distance(locations[j], target) <= radius2 * slack) {
      ++count;
    }
  }
  return std::min(n, std::max(kNeighborFloor, count));
}

std::size_t choose_neighborhood_size(std::span<const Point> locations, Point target,
                                     double bandwidth) {
  if (locations.empty()) {
    throw InsufficientData("choose_neighborhood_size: no observations");
  }
  const NeighborTable table(locations, kNeighborsPerPoint);
  return choose_neighborhood_size(locations, target, bandwidth, table, std::nullopt);
}

PlausibilityContour bag_contour(const SpatialDataset& data, Point target,
                                const MaternParams& params, const ConformalBag& bag) {
  data.validate();
  check_target(target);
  check_bag(data, bag);
  if (bag.members.empty()) {
    return contour_from_breakpoints({}, bag.weights);
  }
  const AugmentedSystem system = bag_system(data, target, params, bag.members);
  const auto intervals = breakpoint_intervals(system);
  return contour_from_breakpoints(intervals, bag.weights);
}

PlausibilityContour gscp_contour(const SpatialDataset& data, Point target,
                                 const MaternParams& params, const NonConformity& measure) {
  if (!measure.closed_form()) {
    throw InvalidArgument(
        "gscp_contour: user-supplied measures have no closed form; use grid_scan_contour");
  }
  return bag_contour(data, target, params, global_bag(data.size()));
}

SampledContour grid_scan_contour(const SpatialDataset& data, Point target,
                                 const MaternParams& params, const NonConformity& measure,
                                 std::span<const double> candidates,
                                 const KernelWeights* weights) {
  data.validate();
  check_target(target);
  const ConformalBag bag = global_bag(data.size());
  const KernelWeights& w = weights ? *weights : bag.weights;
  if (w.weights.size() != data.size() + 1) {
    throw InvalidArgument("grid_scan_contour: need one weight per observation plus self");
  }
  return scan_bag(data, target, params, measure, candidates, bag.members, w);
}

std::vector<double> default_candidate_grid(const AugmentedSystem& system, std::size_t points) {
  if (points < 2) {
    throw InvalidArgument("default_candidate_grid: need at least two points");
  }
  const double center = system.kriging_mean();
  double max_score = 0.0;
  for (std::size_t i = 0; i < system.size(); ++i) {
    max_score = std::max(max_score, system.score(i, center));
  }
  const double half = 8.0 * std::sqrt(system.kriging_variance() * (1.0 + max_score));
  std::vector<double> grid(points);
  const double step = 2.0 * half / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = center - half + step * static_cast<double>(k);
  }
  return grid;
}

PredictionSet conformal_interval(const SpatialDataset& data, Point target,
                                 const MaternParams& params, double alpha,
                                 const ConformalBag& bag, const NonConformity& measure) {
  check_alpha(alpha);
  const double threshold = conformal_threshold(bag.members.size(), alpha);
  if (measure.closed_form()) {
    return upper_level_set(bag_contour(data, target, params, bag), alpha, threshold);
  }
  data.validate();
  check_target(target);
  check_bag(data, bag);
  if (bag.weights.self_weight() >= threshold) {
    // Whole line; no need to scan.
    SampledContour trivial{{}, {}, bag.weights};
    return upper_level_set(trivial, alpha, threshold);
  }
  const AugmentedSystem system = bag_system(data, target, params, bag.members);
  const auto grid = default_candidate_grid(system);
  return upper_level_set(scan_bag(data, target, params, measure, grid, bag.members, bag.weights),
                         alpha, threshold);
}

PredictionSet gscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                            double alpha, const NonConformity& measure) {
  return conformal_interval(data, target, params, alpha, global_bag(data.size()), measure);
}

PredictionSet lscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                            double alpha, std::size_t m, const NonConformity& measure) {
  if (m < 1 || m > data.size()) {
    throw InvalidArgument("lscp_interval: m must lie in [1, n]");
  }
  return conformal_interval(data, target, params, alpha, nearest_bag(data.locations, target, m),
                            measure);
}

PredictionSet slscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                             double alpha, double bandwidth, std::optional<std::size_t> m,
                             const NonConformity& measure) {
  if (data.empty()) {
    throw InsufficientData("slscp_interval: no observations");
  }
  if (m && (*m < 1 || *m > data.size())) {
    throw InvalidArgument("slscp_interval: M must lie in [1, n]");
  }
  const std::size_t size = m ? *m : choose_neighborhood_size(data.locations, target, bandwidth);
  return conformal_interval(data, target, params, alpha,
                            smoothed_bag(data.locations, target, bandwidth, size), measure);
}

}  // namespace scp
