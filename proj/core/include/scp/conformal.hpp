#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "scp/covariance.hpp"
#include "scp/dataset.hpp"
#include "scp/interval.hpp"

namespace scp {

/// t_n(alpha) = floor((n + 1) alpha) / (n + 1) for a bag of n observations.
/// A 1e-9 slack inside the floor keeps products such as 25 * 0.2 from
/// rounding down.
double conformal_threshold(std::size_t n, double alpha);

// ---------------------------------------------------------------------------
// Closed-form breakpoints

/// Precision-matrix quantities for a bag of n observations plus one target
/// whose response y is left free. With the target's response set to y the
/// squared standardized residuals are
///   delta_i(y) = (partial_i + q_it y)^2 / q_ii,
///   delta_t(y) = (target_partial + q_tt y)^2 / q_tt.
struct AugmentedSystem {
  Eigen::VectorXd q_diag;   // q_ii of the observations
  Eigen::VectorXd q_cross;  // q_it
  Eigen::VectorXd partial;  // sum over observations j of q_ij Y_j
  double q_target = 1.0;
  double target_partial = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(q_diag.size()); }
  double kriging_mean() const { return -target_partial / q_target; }
  double kriging_variance() const { return 1.0 / q_target; }
  double score(std::size_t i, double y) const;
  double target_score(double y) const;
};

/// `q` is the (n+1)-dimensional precision with the target last and
/// `responses` the n observed values.
AugmentedSystem augmented_system(const PrecisionMatrix& q, std::span<const double> responses);

/// `responses` has one entry per row of `factor`; the entry at `target` is
/// ignored. This is the leave-one-out form: one factor serves every fold.
AugmentedSystem augmented_system(const PrecisionFactor& factor, std::span<const double> responses,
                                 std::size_t target);

/// delta_i(y) - delta_t(y) = u + v y + w y^2 together with the set where it is
/// nonnegative, which is always a closed interval because w < 0.
struct QuadraticBreakpoints {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  Interval interval;
};

/// Throws NumericalFault if w >= 0 or the discriminant is negative beyond
/// round-off; both are impossible for a positive definite precision matrix.
QuadraticBreakpoints quadratic_breakpoints(const AugmentedSystem& system, std::size_t i);
QuadraticBreakpoints quadratic_breakpoints(const PrecisionMatrix& q,
                                           std::span<const double> responses, std::size_t i);

std::vector<Interval> breakpoint_intervals(const AugmentedSystem& system);

// ---------------------------------------------------------------------------
// Weights, contours and level sets

/// Weights of the n bag members followed by the target's own weight.
struct KernelWeights {
  double bandwidth = 0.0;
  std::vector<double> weights;
  /// Every weight equals 1/(n+1); levels are then computed from counts.
  bool uniform = true;

  std::size_t bag_size() const { return weights.empty() ? 0 : weights.size() - 1; }
  double self_weight() const { return weights.back(); }
};

KernelWeights uniform_weights(std::size_t n);

/// w_i = exp(-d_i^2 / 2 eta^2) / (1 + sum_j exp(-d_j^2 / 2 eta^2)); the target's
/// weight 1 / (1 + sum) is appended. Bandwidths of 1e12 and above, or any
/// configuration where every kernel value is 1, give exactly uniform weights.
KernelWeights kernel_weights(std::span<const double> distances, double bandwidth);

/// Exact plausibility step function
///   p(y) = w_self + sum_i w_i 1{a_i <= y <= b_i}.
///
/// Levels are stored at each breakpoint and on each open segment between
/// them (segment_levels has one more entry than breakpoints). Weighted sums
/// are accumulated in 2^-60 fixed point so the result does not depend on
/// summation order.
class PlausibilityContour {
 public:
  PlausibilityContour(std::vector<double> breakpoints, std::vector<double> point_levels,
                      std::vector<double> segment_levels, KernelWeights weights);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& point_levels() const { return point_levels_; }
  const std::vector<double>& segment_levels() const { return segment_levels_; }
  const KernelWeights& weights_used() const { return weights_; }

  double level(double y) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> point_levels_;
  std::vector<double> segment_levels_;
  KernelWeights weights_;
};

PlausibilityContour contour_from_breakpoints(std::span<const Interval> intervals,
                                             const KernelWeights& weights);

/// {y : p(y) >= threshold}. When the whole line qualifies the set is flagged
/// unbounded and both the single component and the hull are (-inf, inf).
struct PredictionSet {
  double alpha = 0.0;
  double threshold = 0.0;
  std::vector<Interval> components;
  Interval hull;
  bool unbounded = false;

  bool empty() const { return components.empty(); }
  bool contains(double y) const;
};

PredictionSet upper_level_set(const PlausibilityContour& contour, double alpha, double threshold);

/// Plausibility evaluated at a finite list of candidate responses.
struct SampledContour {
  std::vector<double> candidates;
  std::vector<double> levels;
  KernelWeights weights;
};

/// Components are runs of consecutive candidates at or above the threshold.
PredictionSet upper_level_set(const SampledContour& contour, double alpha, double threshold);

// ---------------------------------------------------------------------------
// Non-conformity measures and bags

/// Bag with the target last; its response is the provisional value.
struct BagView {
  std::span<const Point> locations;
  std::span<const double> responses;
};

using ScoreFn = std::function<double(const BagView&, std::size_t)>;

struct NonConformity {
  enum class Kind { squared_residual, absolute_residual, user_supplied };

  Kind kind = Kind::squared_residual;
  ScoreFn evaluator;

  static NonConformity squared() { return {}; }
  static NonConformity absolute() { return {Kind::absolute_residual, {}}; }
  static NonConformity user(ScoreFn fn) { return {Kind::user_supplied, std::move(fn)}; }

  bool closed_form() const { return kind != Kind::user_supplied; }
};

/// Which observations take part in a conformal computation and with what weight.
struct ConformalBag {
  std::vector<std::size_t> members;
  KernelWeights weights;
};

ConformalBag global_bag(std::size_t n);
/// The m observations nearest to target (ties by lower index), uniform weights.
ConformalBag nearest_bag(std::span<const Point> locations, Point target, std::size_t m);
/// The m nearest observations with Gaussian kernel weights of bandwidth eta.
ConformalBag smoothed_bag(std::span<const Point> locations, Point target, double bandwidth,
                          std::size_t m);

/// Neighbourhood size for the smoothed local method: the number of
/// observations within R of the target, where R is the larger of 2 eta and
/// the distance from the target to the 15 nearest neighbours of any
/// observation lying within 2 eta. Clamped to [25, n].
std::size_t choose_neighborhood_size(std::span<const Point> locations, Point target,
                                     double bandwidth);

/// Same, with neighbour lists from `table` (built with k >= 16) and one
/// observation `exclude` removed from the data, as in leave-one-out.
std::size_t choose_neighborhood_size(std::span<const Point> locations, Point target,
                                     double bandwidth, const NeighborTable& table,
                                     std::optional<std::size_t> exclude);

// ---------------------------------------------------------------------------
// Engines

/// Closed-form contour over the whole dataset. Only the built-in residual
/// measures have a closed form; user-supplied measures throw InvalidArgument
/// and must go through grid_scan_contour.
PlausibilityContour gscp_contour(const SpatialDataset& data, Point target,
                                 const MaternParams& params,
                                 const NonConformity& measure = NonConformity::squared());

/// Contour of an arbitrary bag (bag.weights must have members + 1 entries).
PlausibilityContour bag_contour(const SpatialDataset& data, Point target,
                                const MaternParams& params, const ConformalBag& bag);

/// Brute force: for every candidate, insert it as the target's response,
/// recompute every score and sum the weights of those >= the target's score.
/// `weights` defaults to uniform over the whole dataset.
SampledContour grid_scan_contour(const SpatialDataset& data, Point target,
                                 const MaternParams& params, const NonConformity& measure,
                                 std::span<const double> candidates,
                                 const KernelWeights* weights = nullptr);

/// 2001 points spanning mean -/+ 8 sqrt(v (1 + max_i delta_i)), where mean and
/// v are the Kriging moments at the target and delta_i the observation scores
/// with the target's response at that mean.
std::vector<double> default_candidate_grid(const AugmentedSystem& system,
                                           std::size_t points = 2001);

PredictionSet conformal_interval(const SpatialDataset& data, Point target,
                                 const MaternParams& params, double alpha,
                                 const ConformalBag& bag, const NonConformity& measure);

PredictionSet gscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                            double alpha, const NonConformity& measure = NonConformity::squared());

/// Throws InvalidArgument unless 1 <= m <= n.
PredictionSet lscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                            double alpha, std::size_t m,
                            const NonConformity& measure = NonConformity::squared());

/// Without `m` the neighbourhood comes from choose_neighborhood_size.
PredictionSet slscp_interval(const SpatialDataset& data, Point target, const MaternParams& params,
                             double alpha, double bandwidth,
                             std::optional<std::size_t> m = std::nullopt,
                             const NonConformity& measure = NonConformity::squared());

}  // namespace scp
