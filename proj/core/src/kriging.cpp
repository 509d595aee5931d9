#include "scp/kriging.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "scp/errors.hpp"
#include "scp/special.hpp"

namespace scp {

std::vector<LooPrediction> loo_predictions(const PrecisionFactor& factor,
                                           std::span<const double> responses) {
  const auto n = static_cast<Eigen::Index>(responses.size());
  if (n != factor.dim()) {
    throw InvalidArgument("loo_predictions: response count does not match the factor");
  }
  const Eigen::Map<const Eigen::VectorXd> y(responses.data(), n);
  const Eigen::VectorXd qy = factor.apply(y);
  const Eigen::VectorXd& q = factor.diagonal();
  std::vector<LooPrediction> out(responses.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& p = out[static_cast<std::size_t>(i)];
    p.index = static_cast<std::size_t>(i);
    p.mean = y(i) - qy(i) / q(i);
    p.variance = 1.0 / q(i);
    p.residual = qy(i) / std::sqrt(q(i));
  }
  return out;
}

std::vector<LooPrediction> loo_predictions(const SpatialDataset& data, const MaternParams& params) {
  data.validate();
  if (data.size() < 2) {
    throw InsufficientData("loo_predictions: need at least 2 observations");
  }
  const PrecisionFactor factor(covariance_matrix(data.locations, params));
  return loo_predictions(factor, data.responses);
}

LooPrediction predict_at(const SpatialDataset& data, Point target, const MaternParams& params) {
  data.validate();
  params.validate();
  if (data.empty()) {
    throw InsufficientData("predict_at: no observations");
  }
  if (!std::isfinite(target.x) || !std::isfinite(target.y)) {
    throw InvalidArgument("predict_at: target must be finite");
  }
  const auto n = static_cast<Eigen::Index>(data.size());
  const CovarianceMatrix sigma = covariance_matrix(data.locations, params);
  Eigen::VectorXd c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = distance(data.locations[static_cast<std::size_t>(i)], target);
    c(i) = params.partial_sill * matern_correlation(d, params.range, params.smoothness);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) {
    throw DegenerateCovariance("predict_at: data covariance is not positive definite");
  }
  const Eigen::Map<const Eigen::VectorXd> y(data.responses.data(), n);
  const Eigen::VectorXd weights = llt.solve(c);
  LooPrediction out;
  out.index = data.size();
  out.mean = weights.dot(y);
  out.variance = std::max(0.0, params.sill() - weights.dot(c));
  return out;
}

Interval kriging_interval(const LooPrediction& prediction, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("kriging_interval: alpha must lie in (0, 1)");
  }
  if (!(prediction.variance >= 0.0) || !std::isfinite(prediction.mean)) {
    throw InvalidArgument("kriging_interval: invalid prediction");
  }
  const double half = special::normal_quantile(1.0 - alpha / 2.0) * std::sqrt(prediction.variance);
  return {prediction.mean - half, prediction.mean + half};
}

}  // namespace scp
