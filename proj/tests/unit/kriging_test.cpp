#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "scp/kriging.hpp"
#include "scp/special.hpp"
#include "unit/test_support.hpp"

namespace {

using namespace scp;

TEST(LooPredictions, PureNugget) {
  std::mt19937_64 rng(1);
  const auto data = fixture::random_dataset(9, rng);
  const auto preds = loo_predictions(data, {2.0, 0.0, 0.1, 0.7});
  ASSERT_EQ(preds.size(), 9u);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    EXPECT_NEAR(preds[i].mean, 0.0, 1e-14);
    EXPECT_NEAR(preds[i].variance, 2.0, 1e-14);
    EXPECT_NEAR(preds[i].residual, data.responses[i] / std::sqrt(2.0), 1e-14);
    EXPECT_EQ(preds[i].index, i);
  }
}

TEST(LooPredictions, SymmetricPair) {
  const SpatialDataset data{{{0.2, 0.2}, {0.3, 0.2}}, {1.0, -2.0}};
  const MaternParams p{0.5, 2.0, 0.1, 0.5};
  const double c = 2.0 * std::exp(-1.0);
  const double sill = 2.5;
  const auto preds = loo_predictions(data, p);
  EXPECT_NEAR(preds[0].mean, c / sill * -2.0, 1e-14);
  EXPECT_NEAR(preds[1].mean, c / sill * 1.0, 1e-14);
  EXPECT_NEAR(preds[0].variance, sill - c * c / sill, 1e-14);
}

TEST(LooPredictions, MatchesDeleteOneConditional) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const auto data = fixture::random_dataset(30 + rep, rng);
    const auto p = fixture::random_params(rng);
    const auto sigma = fixture::dense_covariance(data.locations, p);
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(data.responses.data(), data.responses.size());
    const auto preds = loo_predictions(data, p);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto want = fixture::delete_one(sigma, y, static_cast<Eigen::Index>(i));
      EXPECT_NEAR(preds[i].mean, want.mean, 1e-8);
      EXPECT_NEAR(preds[i].variance, want.variance, 1e-8);
      EXPECT_NEAR(preds[i].residual, (data.responses[i] - want.mean) / std::sqrt(want.variance),
                  1e-8);
    }
  }
}

TEST(PredictAt, CoincidentTargetInterpolates) {
  const SpatialDataset data{{{0.1, 0.1}, {0.5, 0.4}, {0.8, 0.9}}, {1.2, -0.7, 3.3}};
  const auto pred = predict_at(data, {0.5, 0.4}, {0.0, 1.5, 0.2, 1.0});
  EXPECT_NEAR(pred.mean, -0.7, 1e-10);
  EXPECT_NEAR(pred.variance, 0.0, 1e-10);
  EXPECT_EQ(pred.index, 3u);
}

TEST(PredictAt, FarTargetFallsBackToPrior) {
  const SpatialDataset data{{{0.1, 0.1}, {0.5, 0.4}, {0.8, 0.9}}, {1.2, -0.7, 3.3}};
  const auto pred = predict_at(data, {500.0, 500.0}, {0.3, 1.5, 0.2, 1.0});
  EXPECT_NEAR(pred.mean, 0.0, 1e-12);
  EXPECT_NEAR(pred.variance, 1.8, 1e-12);
}

TEST(PredictAt, ThreePointConditional) {
  const SpatialDataset data{{{0.1, 0.1}, {0.25, 0.4}, {0.3, 0.2}}, {1.2, -0.7, 0.4}};
  const MaternParams p{0.2, 1.5, 0.2, 0.7};
  const Point target{0.2, 0.25};
  std::vector<Point> all = data.locations;
  all.push_back(target);
  const auto sigma = fixture::dense_covariance(all, p);
  Eigen::VectorXd y(4);
  y << 1.2, -0.7, 0.4, 0.0;
  const auto want = fixture::delete_one(sigma, y, 3);
  const auto pred = predict_at(data, target, p);
  EXPECT_NEAR(pred.mean, want.mean, 1e-12);
  EXPECT_NEAR(pred.variance, want.variance, 1e-12);
}

TEST(KrigingInterval, StandardNormal) {
  const auto iv = kriging_interval({0, 0.0, 1.0, 0.0}, 0.1);
  EXPECT_NEAR(iv.lower, -1.6449, 1e-4);
  EXPECT_NEAR(iv.upper, 1.6449, 1e-4);
}

TEST(KrigingInterval, VarianceScaling) {
  const auto a = kriging_interval({0, 1.0, 1.0, 0.0}, 0.1);
  const auto b = kriging_interval({0, 1.0, 4.0, 0.0}, 0.1);
  EXPECT_NEAR(b.width(), 2.0 * a.width(), 1e-14);
  EXPECT_NEAR(0.5 * (b.lower + b.upper), 1.0, 1e-14);
}

TEST(KrigingInterval, AgainstErfOracle) {
  // half-width h solves erf(h / (sd sqrt 2)) = 1 - alpha; bisect on erf directly
  const double mean = 4.58 / 2, var = 2.3, alpha = 0.1;
  const double sd = std::sqrt(var);
  double lo = 0.0, hi = 10.0 * sd;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::erf(mid / (sd * std::sqrt(2.0))) < 1 - alpha ? lo : hi) = mid;
  }
  const auto iv = kriging_interval({0, mean, var, 0.0}, alpha);
  EXPECT_NEAR(iv.upper, mean + lo, 1e-12);
  EXPECT_NEAR(iv.lower, mean - lo, 1e-12);
}

}  // namespace
