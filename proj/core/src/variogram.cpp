#include "scp/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "scp/errors.hpp"

namespace scp {
namespace {

constexpr double kRelativeNuggetFloor = 1e-6;
constexpr double kAbsoluteNuggetFloor = 1e-10;

struct LinearFit {
  double nugget;
  double partial_sill;
  double objective;
};

// min over tau >= tau_lo, s >= 0 of sum w_b (g_b - tau - s h_b)^2; the
// problem is a convex quadratic in two variables, so checking the interior
// stationary point and the three boundary pieces is exact.
LinearFit solve_variance_components(const EmpiricalVariogram& vg, std::span<const double> h,
                                    double tau_lo) {
  double sw = 0, sh = 0, shh = 0, sg = 0, sgh = 0;
  for (std::size_t b = 0; b < vg.size(); ++b) {
    const double w = static_cast<double>(vg.bin_counts[b]);
    sw += w;
    sh += w * h[b];
    shh += w * h[b] * h[b];
    sg += w * vg.semivariances[b];
    sgh += w * vg.semivariances[b] * h[b];
  }
  auto objective = [&](double tau, double s) {
    double f = 0.0;
    for (std::size_t b = 0; b < vg.size(); ++b) {
      const double r = vg.semivariances[b] - tau - s * h[b];
      f += static_cast<double>(vg.bin_counts[b]) * r * r;
    }
    return f;
  };

  LinearFit best{tau_lo, 0.0, std::numeric_limits<double>::infinity()};
  auto consider = [&](double tau, double s) {
    if (!(tau >= tau_lo) || !(s >= 0.0) || !std::isfinite(tau) || !std::isfinite(s)) {
      return;
    }
    const double f = objective(tau, s);
    if (f < best.objective) {
      best = {tau, s, f};
    }
  };

  const double det = sw * shh - sh * sh;
  if (det > 1e-14 * std::max(1.0, sw * shh)) {
    consider((sg * shh - sh * sgh) / det, (sw * sgh - sh * sg) / det);
  }
  consider(tau_lo, shh > 0.0 ? std::max(0.0, (sgh - tau_lo * sh) / shh) : 0.0);
  consider(std::max(tau_lo, sg / sw), 0.0);
  consider(tau_lo, 0.0);
  return best;
}

struct ProfilePoint {
  MaternParams params;
  double objective;
};

ProfilePoint profile(const EmpiricalVariogram& vg, double range, double kappa, double tau_lo,
                     std::vector<double>& h) {
  for (std::size_t b = 0; b < vg.size(); ++b) {
    h[b] = 1.0 - matern_correlation(vg.bin_centers[b], range, kappa);
  }
  const LinearFit lin = solve_variance_components(vg, h, tau_lo);
  return {{lin.nugget, lin.partial_sill, range, kappa}, lin.objective};
}

}  // namespace

double default_max_distance(std::span<const Point> locations) {
  if (locations.empty()) {
    return 0.0;
  }
  double xmin = locations[0].x, xmax = xmin, ymin = locations[0].y, ymax = ymin;
  for (const Point& p : locations) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  return 0.5 * std::hypot(xmax - xmin, ymax - ymin);
}

EmpiricalVariogram empirical_variogram(const SpatialDataset& data, double max_dist,
                                       std::size_t n_bins) {
  data.validate();
  if (!(max_dist > 0.0) || !std::isfinite(max_dist)) {
    throw InvalidArgument("empirical_variogram: max_dist must be finite and > 0");
  }
  if (n_bins < 1) {
    throw InvalidArgument("empirical_variogram: need at least one bin");
  }
  const double width = max_dist / static_cast<double>(n_bins);
  std::vector<double> sums(n_bins, 0.0);
  std::vector<std::size_t> counts(n_bins, 0);
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(data.locations[i], data.locations[j]);
      if (d >= max_dist) {
        continue;
      }
      const auto b = std::min(static_cast<std::size_t>(d / width), n_bins - 1);
      const double diff = data.responses[i] - data.responses[j];
      sums[b] += diff * diff;
      ++counts[b];
    }
  }
  EmpiricalVariogram vg;
  vg.response_variance = sample_variance(data.responses);
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (counts[b] == 0) {
      continue;
    }
    vg.bin_centers.push_back((static_cast<double>(b) + 0.5) * width);
    vg.semivariances.push_back(sums[b] / (2.0 * static_cast<double>(counts[b])));
    vg.bin_counts.push_back(counts[b]);
  }
  if (vg.size() == 0) {
    throw InsufficientData("empirical_variogram: no pairs closer than max_dist");
  }
  return vg;
}

double model_semivariance(double d, const MaternParams& params) {
  return params.nugget +
         params.partial_sill * (1.0 - matern_correlation(d, params.range, params.smoothness));
}

double variogram_objective(const EmpiricalVariogram& vg, const MaternParams& params) {
  double f = 0.0;
  for (std::size_t b = 0; b < vg.size(); ++b) {
    const double r = vg.semivariances[b] - model_semivariance(vg.bin_centers[b], params);
    f += static_cast<double>(vg.bin_counts[b]) * r * r;
  }
  return f;
}

VariogramFit fit_matern(const EmpiricalVariogram& vg, const VariogramFitOptions& options) {
  if (vg.size() < 4) {
    throw InsufficientData("fit_matern: need at least 4 variogram bins");
  }
  if (vg.bin_counts.size() != vg.size() || vg.semivariances.size() != vg.size()) {
    throw InvalidArgument("fit_matern: inconsistent variogram lengths");
  }
  if (options.kappa_grid.empty() || options.range_starts < 2) {
    throw InvalidArgument("fit_matern: empty smoothness grid or too few range starts");
  }
  const double tau_lo =
      std::max(kRelativeNuggetFloor * vg.response_variance, kAbsoluteNuggetFloor);
  const double lo = std::log(options.min_range);
  const double hi = std::log(std::max(options.min_range * 10.0,
                                      options.max_range_factor * vg.bin_centers.back()));

  std::vector<double> h(vg.size());
  VariogramFit fit;
  fit.objective = std::numeric_limits<double>::infinity();
  const std::size_t m = options.range_starts;
  const double step = (hi - lo) / static_cast<double>(m - 1);

  for (double kappa : options.kappa_grid) {
    if (!(kappa > 0.0)) {
      throw InvalidArgument("fit_matern: smoothness grid values must be > 0");
    }
    std::vector<double> values(m);
    std::size_t arg = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const double log_range = lo + step * static_cast<double>(k);
      values[k] = profile(vg, std::exp(log_range), kappa, tau_lo, h).objective;
      fit.start_objectives.push_back(values[k]);
      if (values[k] < values[arg]) {
        arg = k;
      }
    }
    ProfilePoint best = profile(vg, std::exp(lo + step * static_cast<double>(arg)), kappa,
                                tau_lo, h);
    const double a = lo + step * static_cast<double>(arg == 0 ? 0 : arg - 1);
    const double b = lo + step * static_cast<double>(std::min(arg + 1, m - 1));
    std::uintmax_t iterations = 200;
    const auto refined = boost::math::tools::brent_find_minima(
        [&](double log_range) { return profile(vg, std::exp(log_range), kappa, tau_lo, h).objective; },
        a, b, 52, iterations);
    const ProfilePoint candidate = profile(vg, std::exp(refined.first), kappa, tau_lo, h);
    if (candidate.objective <= best.objective) {
      best = candidate;
    } else if (iterations >= 200) {
      fit.converged = false;
    }
    if (best.objective < fit.objective) {
      fit.objective = best.objective;
      fit.params = best.params;
    }
  }
  fit.degenerate = fit.params.partial_sill == 0.0 && fit.params.nugget <= tau_lo;
  return fit;
}

}  // namespace scp
