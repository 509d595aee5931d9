#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scp/covariance.hpp"
#include "scp/dataset.hpp"
#include "scp/interval.hpp"

namespace scp {

/// Simple (mean-zero) Kriging prediction at one location.
struct LooPrediction {
  std::size_t index = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// (Y - mean) / sqrt(variance); zero when the response is unknown.
  double residual = 0.0;
};

/// Leave-one-out predictions for every observation from one precision matrix:
///   mean_i = Y_i - (Q Y)_i / q_ii,  variance_i = 1 / q_ii,  e_i = (Q Y)_i / sqrt(q_ii).
std::vector<LooPrediction> loo_predictions(const SpatialDataset& data, const MaternParams& params);

/// Same, reusing an existing factor of the data covariance.
std::vector<LooPrediction> loo_predictions(const PrecisionFactor& factor,
                                           std::span<const double> responses);

/// Prediction at an unobserved location by conditioning on all observations:
/// mean = c' S^{-1} Y and variance = sill - c' S^{-1} c (clamped at zero),
/// with S the data covariance and c the covariances to the target. `index`
/// is set to data.size(), the slot the target would take.
LooPrediction predict_at(const SpatialDataset& data, Point target, const MaternParams& params);

/// mean -/+ z_{alpha/2} sqrt(variance).
Interval kriging_interval(const LooPrediction& prediction, double alpha);

}  // namespace scp
