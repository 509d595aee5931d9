#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scp/covariance.hpp"
#include "scp/dataset.hpp"

namespace scp {

/// Binned Matheron semivariogram. Only non-empty bins are kept.
struct EmpiricalVariogram {
  std::vector<double> bin_centers;
  std::vector<double> semivariances;
  std::vector<std::size_t> bin_counts;
  /// Sample variance of the responses the variogram was built from; sets the
  /// nugget floor in fit_matern. Zero when unknown.
  double response_variance = 0.0;

  std::size_t size() const { return bin_centers.size(); }
};

/// Half the diagonal of the bounding box of `locations`.
double default_max_distance(std::span<const Point> locations);

/// Pairs are binned into `n_bins` equal-width half-open intervals covering
/// [0, max_dist); semivariance of a bin is sum (Y_i - Y_j)^2 / (2 count).
/// Throws InsufficientData when every bin is empty.
EmpiricalVariogram empirical_variogram(const SpatialDataset& data, double max_dist,
                                       std::size_t n_bins = 13);

/// Model semivariogram tau^2 + sigma^2 (1 - rho(d)).
double model_semivariance(double d, const MaternParams& params);

/// Sum over bins of count_b (gamma_hat_b - gamma_model(center_b))^2.
double variogram_objective(const EmpiricalVariogram& vg, const MaternParams& params);

struct VariogramFitOptions {
  std::vector<double> kappa_grid = {0.3, 0.5, 0.7, 1.0, 1.5, 2.0};
  double min_range = 1e-3;
  /// Upper range bound as a multiple of the largest bin center.
  double max_range_factor = 2.0;
  /// Number of log-spaced range starting points per smoothness value.
  std::size_t range_starts = 24;
};

struct VariogramFit {
  MaternParams params;
  double objective = 0.0;
  /// Objective value at every multi-start point that was evaluated.
  std::vector<double> start_objectives;
  /// Both variance components ended at their lower bounds.
  bool degenerate = false;
  /// The local refinement did not improve on its starting point within the
  /// iteration budget; `params` is the best point seen.
  bool converged = true;
};

/// Weighted least-squares Matern fit.
///
/// For fixed (range, smoothness) the model is linear in (nugget, partial sill),
/// so those two are solved exactly by bound-constrained weighted least squares
/// (nugget >= max(1e-6 var(Y), 1e-10), partial sill >= 0). The range is
/// searched per smoothness value on a log grid of starting points followed by
/// Brent refinement around the best start.
VariogramFit fit_matern(const EmpiricalVariogram& vg, const VariogramFitOptions& options = {});

}  // namespace scp
