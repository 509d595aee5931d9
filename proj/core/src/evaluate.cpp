#include "scp/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "scp/errors.hpp"
#include "scp/ingest.hpp"
#include "scp/kriging.hpp"
#include "scp/parallel.hpp"
#include "scp/simulate.hpp"

namespace scp {
namespace {

constexpr std::size_t kNeighborTableSize = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

void shift(PredictionSet& set, double offset) {
  if (set.unbounded || offset == 0.0) {
    return;
  }
  for (Interval& c : set.components) {
    c.lower += offset;
    c.upper += offset;
  }
  set.hull.lower += offset;
  set.hull.upper += offset;
}

double ratio(double num, std::size_t den) {
  return den ? num / static_cast<double>(den) : std::numeric_limits<double>::quiet_NaN();
}

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

double interval_score(double lower, double upper, double y, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("interval_score: alpha must lie in (0, 1)");
  }
  if (!(lower <= upper)) {
    throw InvalidArgument("interval_score: lower must not exceed upper");
  }
  double s = upper - lower;
  if (y < lower) {
    s += 2.0 / alpha * (lower - y);
  } else if (y > upper) {
    s += 2.0 / alpha * (y - upper);
  }
  return s;
}

double mean_interval_score(std::span<const double> lower, std::span<const double> upper,
                           std::span<const double> y, double alpha) {
  if (lower.size() != upper.size() || lower.size() != y.size() || y.empty()) {
    throw InvalidArgument("mean_interval_score: need equal, nonzero lengths");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    total += interval_score(lower[i], upper[i], y[i], alpha);
  }
  return total / static_cast<double>(y.size());
}

std::string to_string(Method method) {
  switch (method) {
    case Method::gscp:
      return "GSCP";
    case Method::lscp:
      return "LSCP";
    case Method::slscp:
      return "sLSCP";
    case Method::kriging:
      return "Kriging";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gscp") return Method::gscp;
  if (lower == "lscp") return Method::lscp;
  if (lower == "slscp") return Method::slscp;
  if (lower == "kriging") return Method::kriging;
  throw InvalidArgument("unknown method '" + name + "' (expected gscp, lscp, slscp or kriging)");
}

std::string MethodConfig::label() const {
  std::ostringstream os;
  os << to_string(method);
  if (method == Method::lscp) {
    os << "(m=" << neighbors << ')';
  } else if (method == Method::slscp) {
    os << "(eta=" << bandwidth;
    if (cap) {
      os << ",M=" << *cap;
    }
    os << ')';
  }
  return os.str();
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method;
  j["alpha"] = alpha;
  j["scenario"] = scenario_id;
  j["N"] = grid_side;
  j["coverage"] = number_or_null(coverage);
  j["mean_width"] = number_or_null(mean_width);
  j["interval_score"] = number_or_null(interval_score);
  j["n_replicates"] = n_replicates;
  j["n_locations"] = n_locations;
  j["n_unbounded"] = n_unbounded;
  j["n_failed"] = n_failed;
  auto& cols = j["by_column"] = nlohmann::ordered_json::array();
  for (const auto& c : by_column) {
    cols.push_back({{"s_x", c.s_x},
                    {"count", c.count},
                    {"unbounded", c.unbounded},
                    {"coverage", number_or_null(c.coverage)},
                    {"mean_width", number_or_null(c.mean_width)},
                    {"interval_score", number_or_null(c.interval_score)}});
  }
  return j.dump(2);
}

std::string eval_csv_header() {
  return "scenario,N,method,alpha,Cov90,Width,IntScore,n_replicates,n_locations,n_unbounded,"
         "n_failed";
}

std::string eval_csv_row(const EvalReport& r) {
  CsvTable t;
  t.rows.push_back({std::to_string(r.scenario_id), std::to_string(r.grid_side), r.method,
                    format_double(r.alpha), format_double(100.0 * r.coverage),
                    format_double(r.mean_width), format_double(r.interval_score),
                    std::to_string(r.n_replicates), std::to_string(r.n_locations),
                    std::to_string(r.n_unbounded), std::to_string(r.n_failed)});
  std::ostringstream os;
  write_csv(os, t);
  std::string line = os.str();
  line.pop_back();
  return line;
}

ReportBuilder::ReportBuilder(std::string method, double alpha, bool by_column)
    : method_(std::move(method)), alpha_(alpha), by_column_(by_column) {}

void ReportBuilder::add(Accumulator& acc, const LocationOutcome& o) {
  ++acc.count;
  acc.covered += o.covered ? 1 : 0;
  if (o.unbounded) {
    ++acc.unbounded;
  } else {
    ++acc.bounded;
    acc.width += o.upper - o.lower;
    acc.score += o.score;
  }
}

void ReportBuilder::add_replicate(std::span<const LocationOutcome> outcomes) {
  ++replicates_;
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++failed_;
      continue;
    }
    add(total_, o);
    if (by_column_) {
      auto it = std::find_if(columns_.begin(), columns_.end(),
                             [&](const auto& c) { return c.first == o.location.x; });
      if (it == columns_.end()) {
        columns_.push_back({o.location.x, {}});
        it = columns_.end() - 1;
      }
      add(it->second, o);
    }
  }
}

EvalReport ReportBuilder::finish(int scenario_id, std::size_t grid_side) const {
  EvalReport r;
  r.method = method_;
  r.alpha = alpha_;
  r.scenario_id = scenario_id;
  r.grid_side = grid_side;
  r.coverage = ratio(static_cast<double>(total_.covered), total_.count);
  r.mean_width = ratio(total_.width, total_.bounded);
  r.interval_score = ratio(total_.score, total_.bounded);
  r.n_replicates = replicates_;
  r.n_locations = total_.count;
  r.n_unbounded = total_.unbounded;
  r.n_failed = failed_;
  auto cols = columns_;
  std::sort(cols.begin(), cols.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [x, acc] : cols) {
    r.by_column.push_back({x, acc.count, acc.unbounded,
                           ratio(static_cast<double>(acc.covered), acc.count),
                           ratio(acc.width, acc.bounded), ratio(acc.score, acc.bounded)});
  }
  return r;
}

LooHarness::LooHarness(SpatialDataset data, const MaternParams& params, bool center)
    : data_(std::move(data)),
      params_(params),
      center_(center),
      neighbors_(data_.locations, kNeighborTableSize) {
  data_.validate();
  params_.validate();
  if (data_.size() < 2) {
    throw InsufficientData("LooHarness: need at least 2 observations");
  }
  response_sum_ = std::accumulate(data_.responses.begin(), data_.responses.end(), 0.0);
  sigma_ = covariance_matrix(data_.locations, params_).matrix();
  try {
    factor_.emplace(sigma_);
    const Eigen::Map<const Eigen::VectorXd> y(data_.responses.data(), sigma_.rows());
    q_y_ = factor_->apply(y);
    q_one_ = factor_->apply(Eigen::VectorXd::Ones(sigma_.rows()));
  } catch (const DegenerateCovariance& e) {
    // Local folds may still succeed on their smaller blocks.
    factor_error_ = e.what();
  }
}

double LooHarness::fold_offset(std::size_t i) const {
  if (!center_) {
    return 0.0;
  }
  return (response_sum_ - data_.responses[i]) / static_cast<double>(data_.size() - 1);
}

PredictionSet LooHarness::local_set(std::size_t i, std::vector<std::size_t> members,
                                    const KernelWeights& weights, double alpha,
                                    double offset) const {
  const std::size_t n = data_.size();
  const double threshold = conformal_threshold(members.size(), alpha);
  AugmentedSystem system;
  if (members.size() == n - 1 && factor_) {
    std::vector<double> y(data_.responses);
    for (double& v : y) {
      v -= offset;
    }
    system = augmented_system(*factor_, y, i);
  } else {
    members.push_back(i);
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd block(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const auto jc = static_cast<Eigen::Index>(members[static_cast<std::size_t>(c)]);
      for (Eigen::Index r = 0; r < m; ++r) {
        block(r, c) = sigma_(static_cast<Eigen::Index>(members[static_cast<std::size_t>(r)]), jc);
      }
    }
    const PrecisionFactor local(block);
    std::vector<double> y(members.size());
    for (std::size_t k = 0; k + 1 < members.size(); ++k) {
      y[k] = data_.responses[members[k]] - offset;
    }
    y.back() = 0.0;
    system = augmented_system(local, y, members.size() - 1);
  }
  const auto intervals = breakpoint_intervals(system);
  PredictionSet set =
      upper_level_set(contour_from_breakpoints(intervals, weights), alpha, threshold);
  shift(set, offset);
  return set;
}

PredictionSet LooHarness::fold_set(std::size_t i, const MethodConfig& method, double alpha,
                                   double offset) const {
  const std::size_t n = data_.size();
  const Point target = data_.locations[i];
  auto require_factor = [&] {
    if (!factor_) {
      throw DegenerateCovariance(factor_error_);
    }
  };
  switch (method.method) {
    case Method::kriging: {
      require_factor();
      const double qii = factor_->diagonal()(static_cast<Eigen::Index>(i));
      const auto k = static_cast<Eigen::Index>(i);
      const double centered_qy = q_y_(k) - offset * q_one_(k);
      LooPrediction p;
      p.index = i;
      p.mean = data_.responses[i] - centered_qy / qii;
      p.variance = 1.0 / qii;
      const Interval iv = kriging_interval(p, alpha);
      PredictionSet set;
      set.alpha = alpha;
      set.components = {iv};
      set.hull = iv;
      return set;
    }
    case Method::gscp: {
      require_factor();
      std::vector<std::size_t> all;
      all.reserve(n - 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          all.push_back(j);
        }
      }
      return local_set(i, std::move(all), uniform_weights(n - 1), alpha, offset);
    }
    case Method::lscp: {
      const std::size_t m = std::min(method.neighbors, n - 1);
      if (m < 1) {
        throw InvalidArgument("LSCP needs at least one neighbour");
      }
      auto members = nearest_indices(data_.locations, target, m, i);
      std::sort(members.begin(), members.end());
      return local_set(i, std::move(members), uniform_weights(m), alpha, offset);
    }
    case Method::slscp: {
      const std::size_t m =
          method.cap ? std::min(*method.cap, n - 1)
                     : choose_neighborhood_size(data_.locations, target, method.bandwidth,
                                                neighbors_, i);
      if (m < 1) {
        throw InvalidArgument("sLSCP needs at least one neighbour");
      }
      auto members = nearest_indices(data_.locations, target, m, i);
      std::sort(members.begin(), members.end());
      std::vector<double> d(members.size());
      for (std::size_t k = 0; k < members.size(); ++k) {
        d[k] = distance(data_.locations[members[k]], target);
      }
      return local_set(i, std::move(members), kernel_weights(d, method.bandwidth), alpha, offset);
    }
  }
  throw InvalidArgument("unknown method");
}

LocationOutcome LooHarness::evaluate(std::size_t i, const MethodConfig& method,
                                     double alpha) const {
  if (i >= data_.size()) {
    throw InvalidArgument("LooHarness::evaluate: index out of range");
  }
  LocationOutcome o;
  o.index = i;
  o.location = data_.locations[i];
  o.response = data_.responses[i];
  try {
    const PredictionSet set = fold_set(i, method, alpha, fold_offset(i));
    if (set.empty()) {
      throw NumericalFault("empty prediction set");
    }
    o.unbounded = set.unbounded;
    o.covered = set.contains(o.response);
    o.n_components = set.components.size();
    o.lower = set.hull.lower;
    o.upper = set.hull.upper;
    if (!o.unbounded) {
      o.score = interval_score(o.lower, o.upper, o.response, alpha);
    }
  } catch (const Error& e) {
    o.ok = false;
    o.error = e.what();
  }
  return o;
}

std::vector<LocationOutcome> LooHarness::run(const MethodConfig& method, double alpha,
                                             std::size_t jobs,
                                             std::span<const std::size_t> targets) const {
  std::vector<std::size_t> all;
  if (targets.empty()) {
    all.resize(data_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    targets = all;
  }
  std::vector<LocationOutcome> out(targets.size());
  parallel_for(targets.size(), jobs,
               [&](std::size_t k) { out[k] = evaluate(targets[k], method, alpha); });
  return out;
}

VariogramFit fit_dataset(const SpatialDataset& data, const VariogramFitOptions& options) {
  const auto vg = empirical_variogram(data, default_max_distance(data.locations));
  return fit_matern(vg, options);
}

EvalReport loo_evaluate(const SpatialDataset& data, const MethodConfig& method, double alpha,
                        std::optional<MaternParams> params, std::size_t jobs, bool center,
                        bool by_column) {
  if (data.size() < 10) {
    throw InsufficientData("loo_evaluate: need at least 10 observations");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("loo_evaluate: alpha must lie in (0, 1)");
  }
  const MaternParams p = params ? *params : fit_dataset(data).params;
  const LooHarness harness(data, p, center);
  ReportBuilder builder(method.label(), alpha, by_column);
  builder.add_replicate(harness.run(method, alpha, jobs));
  return builder.finish();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.methods.empty() || config.seeds.empty()) {
    throw InvalidArgument("run_experiment: need at least one method and one seed");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidArgument("run_experiment: alpha must lie in (0, 1)");
  }
  std::vector<ReportBuilder> builders;
  for (const auto& m : config.methods) {
    builders.emplace_back(m.label(), config.alpha, config.by_column);
  }
  ExperimentResult result;
  for (std::uint64_t seed : config.seeds) {
    ScenarioSpec spec;
    spec.scenario_id = config.scenario_id;
    spec.grid_side = config.grid_side;
    spec.seed = seed;
    const SpatialDataset data = generate_scenario(spec);
    const MaternParams params =
        config.fixed_params ? *config.fixed_params : fit_dataset(data, config.fit_options).params;
    result.replicate_params.push_back(params);
    std::optional<LooHarness> harness;
    std::string error;
    try {
      harness.emplace(data, params, config.center);
    } catch (const Error& e) {
      error = e.what();
    }
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      if (harness) {
        builders[m].add_replicate(harness->run(config.methods[m], config.alpha, config.jobs));
      } else {
        std::vector<LocationOutcome> failed(data.size());
        for (std::size_t i = 0; i < failed.size(); ++i) {
          failed[i].index = i;
          failed[i].ok = false;
          failed[i].error = error;
        }
        builders[m].add_replicate(failed);
      }
    }
  }
  for (const auto& b : builders) {
    result.reports.push_back(b.finish(config.scenario_id, config.grid_side));
  }
  return result;
}

BandwidthSelection select_bandwidth(const SpatialDataset& data, const MaternParams& params,
                                    std::span<const double> candidates, double alpha,
                                    std::size_t n_validation, std::uint64_t seed,
                                    std::size_t jobs) {
  if (candidates.empty()) {
    throw InvalidArgument("select_bandwidth: no candidate bandwidths");
  }
  BandwidthSelection out;
  out.candidates.assign(candidates.begin(), candidates.end());
  if (candidates.size() == 1) {
    out.bandwidth = candidates[0];
    out.scores.push_back(std::numeric_limits<double>::quiet_NaN());
    return out;
  }
  const auto split = split_holdout(data.size(), std::min(n_validation, data.size()), 0, seed);
  const LooHarness harness(data, params);
  for (double eta : candidates) {
    MethodConfig method;
    method.method = Method::slscp;
    method.bandwidth = eta;
    const auto outcomes = harness.run(method, alpha, jobs, split.validation);
    double total = 0.0;
    std::size_t used = 0;
    bool unbounded = false;
    for (const auto& o : outcomes) {
      if (!o.ok) {
        continue;
      }
      if (o.unbounded) {
        unbounded = true;
        break;
      }
      total += o.score;
      ++used;
    }
    out.scores.push_back(unbounded || used == 0 ? kInf : total / static_cast<double>(used));
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (out.scores[k] < out.scores[best] ||
        (out.scores[k] == out.scores[best] && candidates[k] < candidates[best])) {
      best = k;
    }
  }
  out.bandwidth = candidates[best];
  return out;
}

std::vector<MaternParams> sensitivity_theta_rows() {
  return {
      {1.0, 3.0, 0.10, 0.70}, {1.5, 3.0, 0.10, 0.70}, {0.5, 3.0, 0.10, 0.70},
      {1.0, 4.5, 0.10, 0.70}, {1.0, 1.5, 0.10, 0.70}, {1.0, 3.0, 0.15, 0.70},
      {1.0, 3.0, 0.05, 0.70}, {1.0, 3.0, 0.10, 1.05}, {1.0, 3.0, 0.10, 0.35},
  };
}

std::vector<SensitivityRow> sensitivity_sweep(std::size_t grid_side,
                                              std::span<const std::uint64_t> seeds, double alpha,
                                              std::span<const MaternParams> rows,
                                              std::size_t jobs) {
  if (rows.empty() || seeds.empty()) {
    throw InvalidArgument("sensitivity_sweep: need at least one row and one seed");
  }
  MethodConfig gscp;
  MethodConfig kriging;
  kriging.method = Method::kriging;
  std::vector<ReportBuilder> g, k;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    g.emplace_back(gscp.label(), alpha, false);
    k.emplace_back(kriging.label(), alpha, false);
  }
  for (std::uint64_t seed : seeds) {
    ScenarioSpec spec;
    spec.grid_side = grid_side;
    spec.seed = seed;
    const SpatialDataset data = generate_scenario(spec);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const LooHarness harness(data, rows[r]);
      g[r].add_replicate(harness.run(gscp, alpha, jobs));
      k[r].add_replicate(harness.run(kriging, alpha, jobs));
    }
  }
  std::vector<SensitivityRow> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back({rows[r], g[r].finish(1, grid_side), k[r].finish(1, grid_side)});
  }
  return out;
}

}  // namespace scp
