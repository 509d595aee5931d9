#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scp/conformal.hpp"
#include "scp/covariance.hpp"
#include "scp/dataset.hpp"
#include "scp/variogram.hpp"

namespace scp {

/// (upper - lower) + (2/alpha)(lower - y)[y < lower] + (2/alpha)(y - upper)[y > upper].
double interval_score(double lower, double upper, double y, double alpha);

/// Mean of interval_score over paired observations.
double mean_interval_score(std::span<const double> lower, std::span<const double> upper,
                           std::span<const double> y, double alpha);

enum class Method { gscp, lscp, slscp, kriging };

std::string to_string(Method method);
/// Accepts gscp, lscp, slscp and kriging in any case.
Method method_from_string(const std::string& name);

struct MethodConfig {
  Method method = Method::gscp;
  /// Neighbour count m for the local method.
  std::size_t neighbors = 50;
  /// Kernel bandwidth eta for the smoothed local method.
  double bandwidth = 0.1;
  /// Neighbourhood size M for the smoothed local method; chosen per target when empty.
  std::optional<std::size_t> cap;

  /// "sLSCP(eta=0.1)" style label.
  std::string label() const;
};

/// Result of predicting one held-out observation.
struct LocationOutcome {
  std::size_t index = 0;
  Point location;
  double response = 0.0;
  bool ok = true;
  std::string error;
  bool covered = false;
  bool unbounded = false;
  /// Hull of the prediction set.
  double lower = 0.0;
  double upper = 0.0;
  std::size_t n_components = 0;
  double score = 0.0;
};

struct ColumnSummary {
  double s_x = 0.0;
  std::size_t count = 0;
  std::size_t unbounded = 0;
  double coverage = 0.0;
  double mean_width = 0.0;
  double interval_score = 0.0;
};

/// Averages over every evaluated location of every replicate. Unbounded sets
/// count as covered and are left out of width and score; failed locations are
/// left out of everything and counted.
struct EvalReport {
  std::string method;
  double alpha = 0.1;
  int scenario_id = 0;
  std::size_t grid_side = 0;
  double coverage = 0.0;
  double mean_width = 0.0;
  double interval_score = 0.0;
  std::size_t n_replicates = 0;
  std::size_t n_locations = 0;
  std::size_t n_unbounded = 0;
  std::size_t n_failed = 0;
  std::vector<ColumnSummary> by_column;

  std::string to_json() const;
};

std::string eval_csv_header();
/// scenario,N,method,Cov90,Width,IntScore plus the counts.
std::string eval_csv_row(const EvalReport& report);

/// Folds location outcomes into an EvalReport in the order they are added.
class ReportBuilder {
 public:
  ReportBuilder(std::string method, double alpha, bool by_column);

  void add_replicate(std::span<const LocationOutcome> outcomes);
  EvalReport finish(int scenario_id = 0, std::size_t grid_side = 0) const;

 private:
  struct Accumulator {
    std::size_t count = 0;
    std::size_t covered = 0;
    std::size_t bounded = 0;
    std::size_t unbounded = 0;
    double width = 0.0;
    double score = 0.0;
  };
  static void add(Accumulator& acc, const LocationOutcome& o);

  std::string method_;
  double alpha_;
  bool by_column_;
  std::size_t replicates_ = 0;
  std::size_t failed_ = 0;
  Accumulator total_;
  std::vector<std::pair<double, Accumulator>> columns_;
};

/// Leave-one-out evaluation of one dataset with fixed covariance parameters.
///
/// The full covariance matrix and its precision factor are built once. Global
/// folds reuse the factor directly; local folds gather their covariance block
/// from the stored matrix.
class LooHarness {
 public:
  /// With `center`, each fold subtracts the mean of the responses it may see
  /// and adds it back to the prediction set.
  LooHarness(SpatialDataset data, const MaternParams& params, bool center = false);

  const SpatialDataset& data() const { return data_; }
  const MaternParams& params() const { return params_; }

  LocationOutcome evaluate(std::size_t i, const MethodConfig& method, double alpha) const;

  /// Every location (or only `targets`), folds spread over `jobs` threads.
  std::vector<LocationOutcome> run(const MethodConfig& method, double alpha, std::size_t jobs,
                                   std::span<const std::size_t> targets = {}) const;

 private:
  PredictionSet fold_set(std::size_t i, const MethodConfig& method, double alpha,
                         double offset) const;
  PredictionSet local_set(std::size_t i, std::vector<std::size_t> members,
                          const KernelWeights& weights, double alpha, double offset) const;
  double fold_offset(std::size_t i) const;

  SpatialDataset data_;
  MaternParams params_;
  bool center_;
  double response_sum_ = 0.0;
  Eigen::MatrixXd sigma_;
  std::optional<PrecisionFactor> factor_;
  std::string factor_error_;
  Eigen::VectorXd q_y_;
  Eigen::VectorXd q_one_;
  NeighborTable neighbors_;
};

/// LOO report for one dataset. Without `params` the Matern parameters are
/// fitted to the dataset's empirical variogram first.
EvalReport loo_evaluate(const SpatialDataset& data, const MethodConfig& method, double alpha,
                        std::optional<MaternParams> params = std::nullopt, std::size_t jobs = 1,
                        bool center = false, bool by_column = false);

/// Fits Matern parameters with the default bin layout.
VariogramFit fit_dataset(const SpatialDataset& data, const VariogramFitOptions& options = {});

struct ExperimentConfig {
  int scenario_id = 1;
  std::size_t grid_side = 20;
  std::vector<std::uint64_t> seeds;
  double alpha = 0.1;
  std::vector<MethodConfig> methods;
  /// Use these parameters instead of fitting each replicate.
  std::optional<MaternParams> fixed_params;
  VariogramFitOptions fit_options;
  bool center = false;
  bool by_column = false;
  std::size_t jobs = 1;
};

struct ExperimentResult {
  std::vector<EvalReport> reports;            // one per method, config order
  std::vector<MaternParams> replicate_params;  // one per seed
};

/// Simulate each seed's scenario, fit (or fix) the covariance, and run every
/// method's LOO evaluation. Identical configs give identical results for any
/// number of jobs.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct BandwidthSelection {
  double bandwidth = 0.0;
  std::vector<double> candidates;
  /// Mean interval score per candidate; infinite when any validation set was unbounded.
  std::vector<double> scores;
};

/// Evaluates the smoothed local method at `n_validation` random locations for
/// every candidate bandwidth and keeps the lowest mean interval score; ties go
/// to the smaller bandwidth.
BandwidthSelection select_bandwidth(const SpatialDataset& data, const MaternParams& params,
                                    std::span<const double> candidates, double alpha,
                                    std::size_t n_validation, std::uint64_t seed,
                                    std::size_t jobs = 1);

/// True parameters of the first simulation scenario and the eight variants
/// with one parameter moved by 50%.
std::vector<MaternParams> sensitivity_theta_rows();

struct SensitivityRow {
  MaternParams params;
  EvalReport gscp;
  EvalReport kriging;
};

/// Scenario-1 replicates evaluated with each fixed parameter row.
std::vector<SensitivityRow> sensitivity_sweep(std::size_t grid_side,
                                              std::span<const std::uint64_t> seeds, double alpha,
                                              std::span<const MaternParams> rows,
                                              std::size_t jobs = 1);

}  // namespace scp
