#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "scp/conformal.hpp"
#include "scp/errors.hpp"
#include "scp/kriging.hpp"
#include "scp/simulate.hpp"
#include "unit/test_support.hpp"

namespace {

using namespace scp;

AugmentedSystem system_for(const SpatialDataset& data, Point target, const MaternParams& p) {
  std::vector<Point> pts = data.locations;
  pts.push_back(target);
  return augmented_system(precision_matrix(covariance_matrix(pts, p)), data.responses);
}

std::vector<double> probes(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo + (hi - lo) * (k + 0.5) / count;
  return out;
}

TEST(Threshold, Arithmetic) {
  EXPECT_EQ(conformal_threshold(5, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(conformal_threshold(24, 0.2), 0.2);
  EXPECT_DOUBLE_EQ(conformal_threshold(399, 0.1), 0.1);
  EXPECT_DOUBLE_EQ(conformal_threshold(9, 0.25), 2.0 / 10);
  EXPECT_THROW(conformal_threshold(9, 0.0), InvalidArgument);
  EXPECT_THROW(conformal_threshold(9, 1.0), InvalidArgument);
}

TEST(Breakpoints, PureNuggetIsSymmetricAroundZero) {
  const SpatialDataset data{{{0.1, 0.1}, {0.4, 0.9}, {0.7, 0.3}}, {1.5, -0.25, 3.0}};
  const auto sys = system_for(data, {0.5, 0.5}, {2.0, 0.0, 0.1, 0.7});
  const auto iv = breakpoint_intervals(sys);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(iv[i].lower, -std::abs(data.responses[i]), 1e-14);
    EXPECT_NEAR(iv[i].upper, std::abs(data.responses[i]), 1e-14);
  }
}

TEST(Breakpoints, SymmetricPairGivesSameInterval) {
  const SpatialDataset data{{{0.3, 0.5}, {0.7, 0.5}}, {1.1, 1.1}};
  const auto sys = system_for(data, {0.5, 0.5}, {0.3, 1.0, 0.2, 0.7});
  const auto a = quadratic_breakpoints(sys, 0).interval;
  const auto b = quadratic_breakpoints(sys, 1).interval;
  EXPECT_NEAR(a.lower, b.lower, 1e-12);
  EXPECT_NEAR(a.upper, b.upper, 1e-12);
}

TEST(Breakpoints, RootsMatchSignChangeScan) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    const auto data = fixture::random_dataset(4, rng);
    const auto sys = system_for(data, {0.5, 0.5}, fixture::random_params(rng));
    for (std::size_t i = 0; i < 4; ++i) {
      const auto bp = quadratic_breakpoints(sys, i);
      std::vector<double> roots;
      const double step = 1e-4;
      double prev = sys.score(i, -20.0) - sys.target_score(-20.0);
      for (long k = 1; k <= 400000; ++k) {
        const double y = -20.0 + step * static_cast<double>(k);
        const double cur = sys.score(i, y) - sys.target_score(y);
        if ((prev < 0) != (cur < 0)) roots.push_back(y);
        prev = cur;
      }
      if (bp.interval.lower < -20 || bp.interval.upper > 20) continue;
      ASSERT_EQ(roots.size(), 2u);
      EXPECT_NEAR(bp.interval.lower, roots[0], 1.01 * step);
      EXPECT_NEAR(bp.interval.upper, roots[1], 1.01 * step);
      // the quadratic coefficients are the same function
      for (double y : {-3.0, 0.0, 0.7, 2.5}) {
        const double direct = sys.score(i, y) - sys.target_score(y);
        EXPECT_NEAR(bp.u + bp.v * y + bp.w * y * y, direct, 1e-9 * (1 + std::abs(direct)));
      }
    }
  }
}

TEST(Breakpoints, LeadingCoefficientNegativeOnRandomInstances) {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    const auto data = fixture::random_dataset(20, rng);
    const auto sys = system_for(data, {0.4, 0.6}, fixture::random_params(rng));
    for (std::size_t i = 0; i < 20; ++i) EXPECT_LT(quadratic_breakpoints(sys, i).w, 0.0);
  }
}

TEST(Contour, NoIntervalsIsConstantSelfLevel) {
  const auto c = contour_from_breakpoints({}, uniform_weights(0));
  EXPECT_EQ(c.level(-5.0), 1.0);
  EXPECT_EQ(c.level(123.0), 1.0);
}

TEST(Contour, IdenticalIntervalsReachOne) {
  const std::vector<Interval> iv(4, Interval{-1.0, 2.0});
  const auto c = contour_from_breakpoints(iv, uniform_weights(4));
  EXPECT_EQ(c.level(0.0), 1.0);
  EXPECT_EQ(c.level(-1.0), 1.0);
  EXPECT_EQ(c.level(2.0), 1.0);
  EXPECT_EQ(c.level(2.5), 0.2);
  EXPECT_EQ(c.level(-7.0), 0.2);
}

TEST(Contour, MatchesDirectSumOfIndicators) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Interval> iv;
  std::vector<double> d;
  for (int i = 0; i < 6; ++i) {
    const double a = u(rng), b = u(rng);
    iv.push_back({std::min(a, b), std::max(a, b)});
    d.push_back(0.3 * std::abs(u(rng)));
  }
  for (const KernelWeights& w : {uniform_weights(6), kernel_weights(d, 0.4)}) {
    const auto c = contour_from_breakpoints(iv, w);
    auto direct = [&](double y) {
      double s = w.self_weight();
      for (std::size_t i = 0; i < iv.size(); ++i)
        if (iv[i].contains(y)) s += w.weights[i];
      return s;
    };
    for (double y : probes(-4.0, 4.0, 100000)) ASSERT_NEAR(c.level(y), direct(y), 1e-12) << y;
    for (const auto& i : iv) {
      EXPECT_NEAR(c.level(i.lower), direct(i.lower), 1e-12);
      EXPECT_NEAR(c.level(i.upper), direct(i.upper), 1e-12);
    }
  }
}

TEST(Contour, RankExtremes) {
  std::mt19937_64 rng(21);
  const auto data = fixture::random_dataset(11, rng);
  const MaternParams p{0.4, 1.0, 0.2, 1.0};
  const Point target{0.5, 0.5};
  const auto c = gscp_contour(data, target, p);
  // far out the target's score dominates every other
  EXPECT_EQ(c.level(1e6), 1.0 / 12);
  EXPECT_EQ(c.level(-1e6), 1.0 / 12);
  // at the Kriging mean the target's score is zero
  const auto sys = system_for(data, target, p);
  EXPECT_NEAR(sys.target_score(sys.kriging_mean()), 0.0, 1e-20);
  EXPECT_EQ(c.level(sys.kriging_mean()), 1.0);
  EXPECT_NEAR(sys.kriging_mean(), predict_at(data, target, p).mean, 1e-10);
}

TEST(Contour, ClosedFormEqualsDefinitionOnScenarioDraw) {
  // 5x5 grid with the centre held out: n = 24 observations
  const auto all = generate_scenario({1, 5, 31});
  SpatialDataset data;
  const std::size_t held = 12;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i == held) continue;
    data.locations.push_back(all.locations[i]);
    data.responses.push_back(all.responses[i]);
  }
  const MaternParams p{1.0, 3.0, 0.1, 0.7};
  const Point target = all.locations[held];
  const auto c = gscp_contour(data, target, p);
  std::vector<Point> pts = data.locations;
  pts.push_back(target);
  const auto sigma = fixture::dense_covariance(pts, p);
  const std::vector<double> w(25, 1.0 / 25);
  for (double y : probes(-12.0, 12.0, 400)) {
    EXPECT_NEAR(c.level(y), fixture::direct_plausibility(sigma, data.responses, y, w), 1e-12) << y;
  }
  const auto scan = grid_scan_contour(data, target, p, NonConformity::squared(), probes(-12, 12, 4000));
  for (std::size_t k = 0; k < scan.candidates.size(); ++k)
    EXPECT_EQ(scan.levels[k], c.level(scan.candidates[k]));
}

TEST(LevelSet, MembershipAgreesWithContour) {
  std::mt19937_64 rng(4);
  const auto data = fixture::random_dataset(30, rng);
  const MaternParams p{0.5, 2.0, 0.15, 0.7};
  const auto c = gscp_contour(data, {0.5, 0.5}, p);
  const double t = conformal_threshold(30, 0.1);
  const auto set = upper_level_set(c, 0.1, t);
  ASSERT_FALSE(set.unbounded);
  ASSERT_FALSE(set.empty());
  for (double y : probes(-15, 15, 20000)) EXPECT_EQ(set.contains(y), c.level(y) >= t) << y;
  for (const auto& comp : set.components) {
    EXPECT_GE(comp.lower, set.hull.lower);
    EXPECT_LE(comp.upper, set.hull.upper);
    EXPECT_GE(c.level(comp.lower), t);
    EXPECT_GE(c.level(comp.upper), t);
  }
}

TEST(LevelSet, ZeroThresholdIsUnbounded) {
  std::mt19937_64 rng(6);
  const auto data = fixture::random_dataset(5, rng);
  const auto set = gscp_interval(data, {0.5, 0.5}, {0.5, 1.0, 0.1, 0.7}, 0.1);
  EXPECT_TRUE(set.unbounded);
  EXPECT_TRUE(std::isinf(set.hull.lower) && std::isinf(set.hull.upper));
  EXPECT_TRUE(set.contains(1e300));
}

TEST(LevelSet, TwentyFourObservationsAtTwentyPercent) {
  std::mt19937_64 rng(7);
  const auto data = fixture::random_dataset(24, rng);
  const MaternParams p{0.5, 1.0, 0.1, 0.7};
  const auto c = gscp_contour(data, {0.5, 0.5}, p);
  const auto set = gscp_interval(data, {0.5, 0.5}, p, 0.2);
  EXPECT_DOUBLE_EQ(set.threshold, 0.2);
  // inside means at least 5 of the 25 scores are >= the target's
  for (double y : probes(-10, 10, 5000))
    EXPECT_EQ(set.contains(y), std::lround(c.level(y) * 25) >= 5) << y;
}

TEST(LevelSet, SampledEmptyIntersection) {
  const SampledContour s{{-1.0, 0.0, 1.0}, {0.1, 0.1, 0.1}, uniform_weights(19)};
  const auto set = upper_level_set(s, 0.2, 0.2);
  EXPECT_TRUE(set.empty());
  EXPECT_FALSE(set.unbounded);
  EXPECT_FALSE(set.contains(0.0));
}

TEST(LevelSet, NestedInAlpha) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const auto data = fixture::random_dataset(40, rng);
    const auto p = fixture::random_params(rng);
    const auto c = gscp_contour(data, {0.5, 0.5}, p);
    const double alphas[] = {0.05, 0.1, 0.2, 0.3, 0.5};
    for (std::size_t a = 0; a + 1 < std::size(alphas); ++a) {
      const auto wide = upper_level_set(c, alphas[a], conformal_threshold(40, alphas[a]));
      const auto narrow = upper_level_set(c, alphas[a + 1], conformal_threshold(40, alphas[a + 1]));
      for (const auto& comp : narrow.components) {
        EXPECT_TRUE(std::any_of(wide.components.begin(), wide.components.end(), [&](const Interval& w) {
          return w.lower <= comp.lower && comp.upper <= w.upper;
        }));
      }
    }
  }
}

TEST(Measures, AbsoluteResidualGivesSameContour) {
  std::mt19937_64 rng(13);
  const auto data = fixture::random_dataset(15, rng);
  const MaternParams p{0.3, 1.5, 0.2, 1.2};
  const Point target{0.3, 0.6};
  const auto grid = probes(-10, 10, 10000);
  const auto sq = grid_scan_contour(data, target, p, NonConformity::squared(), grid);
  const auto ab = grid_scan_contour(data, target, p, NonConformity::absolute(), grid);
  EXPECT_EQ(sq.levels, ab.levels);
  const auto a = gscp_interval(data, target, p, 0.1, NonConformity::squared());
  const auto b = gscp_interval(data, target, p, 0.1, NonConformity::absolute());
  EXPECT_EQ(a.components, b.components);
}

TEST(Measures, UserSuppliedGoesThroughGridScan) {
  std::mt19937_64 rng(14);
  const auto data = fixture::random_dataset(12, rng);
  const MaternParams p{0.3, 1.5, 0.2, 1.0};
  const Point target{0.45, 0.55};
  // exp of the delete-one absolute residual: a monotone transform of the built-in score
  const auto user = NonConformity::user([&](const BagView& bag, std::size_t i) {
    const std::vector<Point> pts(bag.locations.begin(), bag.locations.end());
    const auto sigma = fixture::dense_covariance(pts, p);
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(bag.responses.data(), bag.responses.size());
    const auto c = fixture::delete_one(sigma, y, static_cast<Eigen::Index>(i));
    return std::exp(std::abs(y(static_cast<Eigen::Index>(i)) - c.mean) / std::sqrt(c.variance));
  });
  EXPECT_THROW(gscp_contour(data, target, p, user), InvalidArgument);
  const auto exact = gscp_interval(data, target, p, 0.2);
  const auto scanned = gscp_interval(data, target, p, 0.2, user);
  ASSERT_FALSE(exact.unbounded);
  ASSERT_FALSE(scanned.empty());
  const auto grid = default_candidate_grid(system_for(data, target, p));
  const double step = grid[1] - grid[0];
  EXPECT_GE(scanned.hull.lower, exact.hull.lower - 1e-9);
  EXPECT_LE(scanned.hull.lower, exact.hull.lower + step);
  EXPECT_LE(scanned.hull.upper, exact.hull.upper + 1e-9);
  EXPECT_GE(scanned.hull.upper, exact.hull.upper - step);
}

TEST(KernelWeights, HugeBandwidthIsUniform) {
  const std::vector<double> d{0.1, 0.5, 2.0};
  const auto w = kernel_weights(d, 1e12);
  EXPECT_TRUE(w.uniform);
  for (double v : w.weights) EXPECT_EQ(v, 0.25);
}

TEST(KernelWeights, ZeroDistancesAreUniform) {
  const std::vector<double> d(5, 0.0);
  const auto w = kernel_weights(d, 0.1);
  EXPECT_TRUE(w.uniform);
  for (double v : w.weights) EXPECT_EQ(v, 1.0 / 6);
}

TEST(KernelWeights, TwoPointExample) {
  const std::vector<double> d{1.0, 2.0};
  const auto w = kernel_weights(d, 1.0);
  const double z = 1 + std::exp(-0.5) + std::exp(-2.0);
  EXPECT_NEAR(w.weights[0], std::exp(-0.5) / z, 1e-15);
  EXPECT_NEAR(w.weights[1], std::exp(-2.0) / z, 1e-15);
  EXPECT_NEAR(w.self_weight(), 1 / z, 1e-15);
  EXPECT_FALSE(w.uniform);
}

TEST(KernelWeights, SumToOneSelfLargest) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::vector<double> d(40);
  for (double& v : d) v = u(rng);
  const auto w = kernel_weights(d, 0.1);
  double total = 0;
  for (double v : w.weights) {
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, w.self_weight());
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(LocalMethods, FullNeighbourhoodIsGlobal) {
  std::mt19937_64 rng(15);
  const auto data = fixture::random_dataset(30, rng);
  const MaternParams p{0.3, 1.0, 0.1, 0.7};
  const auto g = gscp_interval(data, {0.5, 0.5}, p, 0.1);
  const auto l = lscp_interval(data, {0.5, 0.5}, p, 0.1, 30);
  EXPECT_EQ(g.components, l.components);
  EXPECT_EQ(g.threshold, l.threshold);
}

TEST(LocalMethods, SingleNeighbourIsUnbounded) {
  std::mt19937_64 rng(16);
  const auto data = fixture::random_dataset(30, rng);
  const auto l = lscp_interval(data, {0.5, 0.5}, {0.3, 1.0, 0.1, 0.7}, 0.4, 1);
  EXPECT_TRUE(l.unbounded);
  EXPECT_THROW(lscp_interval(data, {0.5, 0.5}, {0.3, 1.0, 0.1, 0.7}, 0.4, 31), InvalidArgument);
}

TEST(LocalMethods, SmoothedDegeneratesToGlobal) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const auto data = fixture::random_dataset(35, rng);
    const auto p = fixture::random_params(rng);
    const Point target{0.2 + 0.1 * rep, 0.7};
    const auto g = gscp_interval(data, target, p, 0.1);
    const auto s = slscp_interval(data, target, p, 0.1, 1e12, data.size());
    EXPECT_EQ(g.components, s.components);
    EXPECT_EQ(g.hull, s.hull);
    EXPECT_EQ(g.threshold, s.threshold);
    EXPECT_EQ(g.unbounded, s.unbounded);
    const auto gc = gscp_contour(data, target, p);
    const auto sc = bag_contour(data, target, p, smoothed_bag(data.locations, target, 1e12, 35));
    EXPECT_EQ(gc.breakpoints(), sc.breakpoints());
    EXPECT_EQ(gc.segment_levels(), sc.segment_levels());
  }
}

TEST(LocalMethods, TinyBandwidthConcentratesOnSelf) {
  std::mt19937_64 rng(18);
  const auto data = fixture::random_dataset(30, rng);
  const auto bag = smoothed_bag(data.locations, {0.5, 0.5}, 1e-6, 30);
  EXPECT_NEAR(bag.weights.self_weight(), 1.0, 1e-12);
  EXPECT_TRUE(slscp_interval(data, {0.5, 0.5}, {0.3, 1.0, 0.1, 0.7}, 0.1, 1e-6, 30).unbounded);
}

TEST(NeighbourhoodSize, GridEnumeration) {
  const auto g40 = grid_locations(40);
  EXPECT_EQ(choose_neighborhood_size(g40, {0.5, 0.5}, 0.1), 325u);
  EXPECT_EQ(choose_neighborhood_size(g40, {41.0 / 80, 41.0 / 80}, 0.1), 332u);
  EXPECT_EQ(choose_neighborhood_size(grid_locations(10), {0.5, 0.5}, 0.1), 57u);
}

TEST(NeighbourhoodSize, EverythingNearbyTakesAll) {
  const auto g = grid_locations(6);
  EXPECT_EQ(choose_neighborhood_size(g, {0.5, 0.5}, 1.0), 36u);
  EXPECT_EQ(choose_neighborhood_size(g, {0.5, 0.5}, 1e12), 36u);
}

TEST(NeighbourhoodSize, LeaveOneOutMatchesPhysicalRemoval) {
  const auto g = grid_locations(20);
  const NeighborTable table(g, 16);
  for (std::size_t i : {0u, 57u, 210u, 399u}) {
    std::vector<Point> rest;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (j != i) rest.push_back(g[j]);
    EXPECT_EQ(choose_neighborhood_size(g, g[i], 0.1, table, i),
              choose_neighborhood_size(rest, g[i], 0.1))
        << i;
  }
}

}  // namespace
