#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "scp/conformal.hpp"
#include "scp/errors.hpp"
#include "scp/evaluate.hpp"
#include "scp/ingest.hpp"
#include "scp/kriging.hpp"
#include "scp/simulate.hpp"
#include "scp/variogram.hpp"

namespace scp::cli {
namespace {

/// Bad flags, bad config, missing input: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { quiet, error, warn, info, debug };

LogLevel log_level_from_env() {
  const char* v = std::getenv("SCP_LOG_LEVEL");
  const std::string s = v ? v : "info";
  if (s == "quiet") return LogLevel::quiet;
  if (s == "error") return LogLevel::error;
  if (s == "warn") return LogLevel::warn;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::info;
}

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level_from_env()) {}

  void log(LogLevel level, const std::string& msg) const {
    static constexpr const char* names[] = {"", "error", "warning", "info", "debug"};
    if (level <= level_ && level != LogLevel::quiet) {
      err_ << "scp: " << names[static_cast<int>(level)] << ": " << msg << '\n';
    }
  }
  void warn(const std::string& msg) const { log(LogLevel::warn, msg); }
  void info(const std::string& msg) const { log(LogLevel::info, msg); }

 private:
  std::ostream& err_;
  LogLevel level_;
};

// Writes to `out` for "-", otherwise to a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : path_(path) {
    if (path == "-" || path.empty()) {
      stream_ = &out;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw IoError("cannot open " + path + " for writing");
      }
      stream_ = file_.get();
    }
  }
  ~Sink() = default;

  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) {
      throw IoError("write failed for " + path_);
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string cell(double v) { return std::isnan(v) ? std::string() : format_double(v); }

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw UsageError("target '" + text + "' is not of the form x,y");
  }
  try {
    std::size_t used_x = 0, used_y = 0;
    const std::string xs = text.substr(0, comma);
    const std::string ys = text.substr(comma + 1);
    const Point p{std::stod(xs, &used_x), std::stod(ys, &used_y)};
    if (used_x != xs.size() || used_y != ys.size() || !std::isfinite(p.x) ||
        !std::isfinite(p.y)) {
      throw std::invalid_argument("trailing text");
    }
    return p;
  } catch (const std::logic_error&) {
    throw UsageError("target '" + text + "' is not of the form x,y");
  }
}

struct LoadedInput {
  SpatialDataset data;
  IngestReport report;
  double offset = 0.0;
};

LoadedInput load_input(const RunConfig& cfg, bool center, const Logger& log) {
  if (cfg.input.empty()) {
    throw UsageError("--input is required");
  }
  ColumnSpec spec;
  spec.x = cfg.x_column;
  spec.y = cfg.y_column;
  spec.response = cfg.response_column;
  spec.rescale = cfg.rescale;
  LoadedInput in;
  try {
    auto loaded = load_csv(cfg.input, spec);
    in.data = std::move(loaded.data);
    in.report = std::move(loaded.report);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  }
  for (const auto& r : in.report.rejections) {
    log.warn(cfg.input + ":" + std::to_string(r.line) + ": row rejected: " + r.reason);
  }
  if (center) {
    in.offset = center_responses(in.data);
    in.report.centering_offset = in.offset;
  }
  log.log(LogLevel::debug, "ingest report: " + in.report.to_json());
  return in;
}

std::vector<Point> load_targets(const RunConfig& cfg) {
  std::vector<Point> raw;
  for (const auto& t : cfg.target) {
    raw.push_back(parse_point(t));
  }
  if (!cfg.targets.empty()) {
    ColumnSpec spec;
    spec.x = cfg.x_column;
    spec.y = cfg.y_column;
    std::ifstream file(cfg.targets, std::ios::binary);
    if (!file) {
      throw UsageError("cannot open " + cfg.targets);
    }
    const CsvTable table = read_csv(file);
    const auto col = [&](const std::string& name) {
      const auto it = std::find(table.header.begin(), table.header.end(), name);
      if (it == table.header.end()) {
        throw UsageError(cfg.targets + ": no column named " + name);
      }
      return static_cast<std::size_t>(it - table.header.begin());
    };
    const std::size_t cx = col(cfg.x_column), cy = col(cfg.y_column);
    for (const auto& row : table.rows) {
      if (row.size() <= std::max(cx, cy)) {
        throw UsageError(cfg.targets + ": short row");
      }
      raw.push_back(parse_point(row[cx] + "," + row[cy]));
    }
  }
  if (raw.empty()) {
    throw UsageError("no targets given (use --target x,y or --targets file)");
  }
  return raw;
}

MaternParams resolve_params(const RunConfig& cfg, const SpatialDataset& data, const Logger& log) {
  const int given = cfg.nugget.has_value() + cfg.partial_sill.has_value() + cfg.range.has_value() +
                    cfg.smoothness.has_value();
  if (given == 4) {
    MaternParams p{*cfg.nugget, *cfg.partial_sill, *cfg.range, *cfg.smoothness};
    try {
      p.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
  if (given != 0) {
    throw UsageError("give all of --nugget, --partial-sill, --range, --smoothness or none");
  }
  VariogramFitOptions options;
  options.kappa_grid = cfg.kappa_grid;
  const VariogramFit fit = fit_dataset(data, options);
  if (!fit.converged) {
    log.warn("variogram fit did not converge; using the best point found");
  }
  if (fit.degenerate) {
    log.warn("variogram fit is degenerate (no spatial variation)");
  }
  std::ostringstream os;
  os << "fitted nugget=" << fit.params.nugget << " partial_sill=" << fit.params.partial_sill
     << " range=" << fit.params.range << " smoothness=" << fit.params.smoothness;
  log.info(os.str());
  return fit.params;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("--alpha must lie in (0, 1)");
  }
}

Method parse_method(const std::string& name) {
  try {
    return method_from_string(name);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

MethodConfig method_config(const RunConfig& cfg, Method method) {
  MethodConfig mc;
  mc.method = method;
  mc.neighbors = cfg.m;
  mc.bandwidth = cfg.eta;
  mc.cap = cfg.M;
  return mc;
}

ConformalBag make_bag(const RunConfig& cfg, Method method, const SpatialDataset& data,
                      Point target) {
  switch (method) {
    case Method::lscp:
      return nearest_bag(data.locations, target, cfg.m);
    case Method::slscp: {
      const std::size_t size =
          cfg.M ? *cfg.M : choose_neighborhood_size(data.locations, target, cfg.eta);
      return smoothed_bag(data.locations, target, cfg.eta, size);
    }
    default:
      return global_bag(data.size());
  }
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  if (cfg.scenario.size() != 1 || cfg.n.size() != 1) {
    throw UsageError("simulate takes exactly one --scenario and one --n");
  }
  ScenarioSpec spec;
  spec.scenario_id = cfg.scenario[0];
  spec.grid_side = cfg.n[0];
  if (cfg.seed) {
    spec.seed = *cfg.seed;
  } else {
    spec.seed = entropy_seed();
    log.info("no --seed given; using seed " + std::to_string(spec.seed));
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const SpatialDataset data = generate_scenario(spec);
  Sink sink(cfg.output, out);
  write_dataset_csv(sink.stream(), data);
  sink.close();
  std::string sidecar = cfg.sidecar;
  if (sidecar.empty() && cfg.output != "-") {
    sidecar = cfg.output + ".json";
  }
  if (!sidecar.empty()) {
    Sink side(sidecar, out);
    side.stream() << to_json(spec) << '\n';
    side.close();
  }
  return 0;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  check_alpha(cfg.alpha);
  const Method method = parse_method(cfg.method);
  const LoadedInput in = load_input(cfg, cfg.center, log);
  const auto targets = load_targets(cfg);
  const MaternParams params = resolve_params(cfg, in.data, log);

  CsvTable table;
  table.header = {"s_x", "s_y", "lower_hull", "upper_hull", "n_components",
                  "plausibility_at_median", "method", "alpha", "status"};
  std::size_t failures = 0;
  for (const Point raw : targets) {
    const Point t = in.report.rescale ? in.report.rescale->apply(raw) : raw;
    std::vector<std::string> row{format_double(raw.x), format_double(raw.y)};
    try {
      PredictionSet set;
      double plausibility = std::numeric_limits<double>::quiet_NaN();
      if (method == Method::kriging) {
        const Interval iv = kriging_interval(predict_at(in.data, t, params), cfg.alpha);
        set.components = {iv};
        set.hull = iv;
      } else {
        const ConformalBag bag = make_bag(cfg, method, in.data, t);
        const PlausibilityContour contour = bag_contour(in.data, t, params, bag);
        set = upper_level_set(contour, cfg.alpha,
                              conformal_threshold(bag.members.size(), cfg.alpha));
        if (!set.unbounded && !set.empty()) {
          plausibility = contour.level(0.5 * (set.hull.lower + set.hull.upper));
        }
      }
      const double lo = set.empty() ? std::numeric_limits<double>::quiet_NaN() : set.hull.lower;
      const double hi = set.empty() ? std::numeric_limits<double>::quiet_NaN() : set.hull.upper;
      row.insert(row.end(), {cell(lo + in.offset), cell(hi + in.offset),
                             std::to_string(set.components.size()), cell(plausibility),
                             to_string(method), format_double(cfg.alpha), "ok"});
    } catch (const Error& e) {
      ++failures;
      row.insert(row.end(), {"", "", "0", "", to_string(method), format_double(cfg.alpha),
                             std::string("error: ") + e.what()});
    }
    table.rows.push_back(std::move(row));
  }
  Sink sink(cfg.output, out);
  write_csv(sink.stream(), table);
  sink.close();
  if (failures) {
    log.warn(std::to_string(failures) + " target(s) failed; see the status column");
  }
  return 0;
}

int cmd_contour(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  check_alpha(cfg.alpha);
  const Method method = parse_method(cfg.method);
  if (method == Method::kriging) {
    throw UsageError("contour needs a conformal method (gscp, lscp or slscp)");
  }
  const LoadedInput in = load_input(cfg, cfg.center, log);
  const auto targets = load_targets(cfg);
  if (targets.size() != 1) {
    throw UsageError("contour takes exactly one target");
  }
  const MaternParams params = resolve_params(cfg, in.data, log);
  const Point t = in.report.rescale ? in.report.rescale->apply(targets[0]) : targets[0];
  const ConformalBag bag = make_bag(cfg, method, in.data, t);
  const PlausibilityContour contour = bag_contour(in.data, t, params, bag);

  CsvTable table;
  table.header = {"kind", "y_lower", "y_upper", "level"};
  const auto& bp = contour.breakpoints();
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= bp.size(); ++j) {
    const double lo = j == 0 ? -inf : bp[j - 1] + in.offset;
    const double hi = j == bp.size() ? inf : bp[j] + in.offset;
    table.rows.push_back({"segment", format_double(lo), format_double(hi),
                          format_double(contour.segment_levels()[j])});
    if (j < bp.size()) {
      table.rows.push_back({"point", format_double(hi), format_double(hi),
                            format_double(contour.point_levels()[j])});
    }
  }
  Sink sink(cfg.output, out);
  write_csv(sink.stream(), table);
  sink.close();
  return 0;
}

int cmd_benchmark(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  if (!cfg.seed) {
    throw UsageError("benchmark requires --seed");
  }
  check_alpha(cfg.alpha);
  if (cfg.replicates < 1) {
    throw UsageError("--replicates must be >= 1");
  }
  std::vector<MethodConfig> methods;
  for (const auto& name : cfg.methods) {
    methods.push_back(method_config(cfg, parse_method(name)));
  }
  if (methods.empty()) {
    throw UsageError("--methods is empty");
  }
  std::optional<MaternParams> fixed;
  const int given = cfg.nugget.has_value() + cfg.partial_sill.has_value() + cfg.range.has_value() +
                    cfg.smoothness.has_value();
  if (given == 4) {
    fixed = MaternParams{*cfg.nugget, *cfg.partial_sill, *cfg.range, *cfg.smoothness};
  } else if (given != 0) {
    throw UsageError("give all of --nugget, --partial-sill, --range, --smoothness or none");
  }

  std::ostringstream csv;
  csv << eval_csv_header() << '\n';
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (int scenario : cfg.scenario) {
    for (std::size_t side : cfg.n) {
      ExperimentConfig ec;
      ec.scenario_id = scenario;
      ec.grid_side = side;
      for (std::size_t r = 0; r < cfg.replicates; ++r) {
        ec.seeds.push_back(*cfg.seed + r);
      }
      ec.alpha = cfg.alpha;
      ec.methods = methods;
      ec.fixed_params = fixed;
      ec.fit_options.kappa_grid = cfg.kappa_grid;
      ec.center = false;
      ec.by_column = cfg.by_column;
      ec.jobs = cfg.jobs;
      try {
        ScenarioSpec{scenario, side, 0, {}}.validate();
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      log.info("scenario " + std::to_string(scenario) + ", N=" + std::to_string(side) + ", " +
               std::to_string(cfg.replicates) + " replicate(s)");
      const ExperimentResult result = run_experiment(ec);
      for (const auto& report : result.reports) {
        csv << eval_csv_row(report) << '\n';
        reports.push_back(nlohmann::ordered_json::parse(report.to_json()));
        if (report.n_failed) {
          log.warn(report.method + ": " + std::to_string(report.n_failed) +
                   " location(s) failed and were excluded");
        }
      }
    }
  }
  Sink sink(cfg.output, out);
  sink.stream() << csv.str();
  sink.close();
  if (!cfg.json.empty()) {
    Sink js(cfg.json, out);
    js.stream() << reports.dump(2) << '\n';
    js.close();
  }
  return 0;
}

int cmd_sensitivity(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  if (!cfg.seed) {
    throw UsageError("sensitivity requires --seed");
  }
  check_alpha(cfg.alpha);
  if (cfg.n.size() != 1 || cfg.replicates < 1) {
    throw UsageError("sensitivity takes one --n and --replicates >= 1");
  }
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < cfg.replicates; ++r) {
    seeds.push_back(*cfg.seed + r);
  }
  log.info("sensitivity sweep, N=" + std::to_string(cfg.n[0]) + ", " +
           std::to_string(cfg.replicates) + " replicate(s)");
  const auto rows = sensitivity_theta_rows();
  const auto result = sensitivity_sweep(cfg.n[0], seeds, cfg.alpha, rows, cfg.jobs);
  CsvTable table;
  table.header = {"nugget",     "partial_sill", "range",         "smoothness",
                  "gscp_cov90", "gscp_width",   "kriging_cov90", "kriging_width"};
  for (const auto& r : result) {
    table.rows.push_back({format_double(r.params.nugget), format_double(r.params.partial_sill),
                          format_double(r.params.range), format_double(r.params.smoothness),
                          format_double(100.0 * r.gscp.coverage), format_double(r.gscp.mean_width),
                          format_double(100.0 * r.kriging.coverage),
                          format_double(r.kriging.mean_width)});
  }
  Sink sink(cfg.output, out);
  write_csv(sink.stream(), table);
  sink.close();
  return 0;
}

int cmd_tune(const RunConfig& cfg, std::ostream& out, const Logger& log) {
  check_alpha(cfg.alpha);
  if (cfg.etas.empty()) {
    throw UsageError("--etas is empty");
  }
  for (double eta : cfg.etas) {
    if (!(eta > 0.0)) {
      throw UsageError("--etas values must be > 0");
    }
  }
  const LoadedInput in = load_input(cfg, cfg.center, log);
  const MaternParams params = resolve_params(cfg, in.data, log);
  std::uint64_t seed = 0;
  if (cfg.seed) {
    seed = *cfg.seed;
  } else {
    seed = entropy_seed();
    log.info("no --seed given; using seed " + std::to_string(seed));
  }
  const auto sel =
      select_bandwidth(in.data, params, cfg.etas, cfg.alpha, cfg.n_validation, seed, cfg.jobs);
  CsvTable table;
  table.header = {"eta", "mean_interval_score", "selected"};
  for (std::size_t k = 0; k < sel.candidates.size(); ++k) {
    table.rows.push_back({format_double(sel.candidates[k]), cell(sel.scores[k]),
                          sel.candidates[k] == sel.bandwidth ? "1" : "0"});
  }
  Sink sink(cfg.output, out);
  write_csv(sink.stream(), table);
  sink.close();
  std::ostringstream os;
  os << "selected eta=" << sel.bandwidth;
  if (in.report.rescale) {
    os << " (in rescaled coordinates)";
  }
  log.info(os.str());
  return 0;
}

// Flag registration shared between subcommands. Each helper adds one
// RunConfig field under its JSON key name.
struct Flags {
  CLI::App* app;
  RunConfig& cfg;

  static std::string flag(const std::string& key) {
    std::string f = "--" + key;
    std::replace(f.begin(), f.end(), '_', '-');
    return f;
  }

  template <class T>
  void value(const std::string& key, T& field, const std::string& help) {
    app->add_option(flag(key), field, help)->capture_default_str();
  }
  template <class T>
  void list(const std::string& key, std::vector<T>& field, const std::string& help) {
    app->add_option_function<std::vector<T>>(
           flag(key), [&field](const std::vector<T>& v) { field = v; }, help)
        ->delimiter(',')
        ->expected(1, -1);
  }
  void strings(const std::string& key, std::vector<std::string>& field, const std::string& help) {
    app->add_option(flag(key), field, help)->expected(1)->multi_option_policy(
        CLI::MultiOptionPolicy::TakeAll);
  }
  template <class T>
  void optional(const std::string& key, std::optional<T>& field, const std::string& help) {
    app->add_option_function<T>(flag(key), [&field](const T& v) { field = v; }, help);
  }
  void toggle(const std::string& key, bool& field, const std::string& help) {
    app->add_flag(flag(key) + ",!--no-" + flag(key).substr(2), field, help);
  }

  void io_input() {
    value("input", cfg.input, "dataset CSV");
    value("x_column", cfg.x_column, "column holding the first coordinate");
    value("y_column", cfg.y_column, "column holding the second coordinate");
    value("response_column", cfg.response_column, "column holding the response");
    toggle("rescale", cfg.rescale, "map coordinates into the unit square (one scale for both axes)");
    toggle("center", cfg.center, "subtract the response mean before prediction");
  }
  void covariance() {
    optional("nugget", cfg.nugget, "fixed nugget tau^2");
    optional("partial_sill", cfg.partial_sill, "fixed partial sill sigma^2");
    optional("range", cfg.range, "fixed range phi");
    optional("smoothness", cfg.smoothness, "fixed smoothness kappa");
    list("kappa_grid", cfg.kappa_grid, "smoothness values tried by the variogram fit");
  }
  void method_params() {
    value("alpha", cfg.alpha, "miscoverage level");
    value("eta", cfg.eta, "kernel bandwidth for slscp");
    value("m", cfg.m, "neighbour count for lscp");
    optional("M", cfg.M, "neighbourhood size for slscp (default: chosen from eta)");
  }
  void common(const std::string& config_help) {
    value("output", cfg.output, "output path, - for stdout");
    value("jobs", cfg.jobs, "worker threads, 0 for all cores");
    app->add_option("--config", config_help_sink, config_help);
  }

  std::string config_help_sink;
};

const char* kConfigHelp = "JSON file of settings (keys as flag names with '_')";

}  // namespace

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "command",    "input",        "targets",   "target",        "output",
      "sidecar",    "json",         "x_column",  "y_column",      "response_column",
      "rescale",    "center",       "scenario",  "n",             "seed",
      "replicates", "by_column",    "method",    "methods",       "alpha",
      "eta",        "etas",         "m",         "M",             "n_validation",
      "nugget",     "partial_sill", "range",     "smoothness",    "kappa_grid",
      "jobs"};
  return keys;
}

void apply_config_json(RunConfig& c, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    throw InvalidArgument("config: top level must be an object");
  }
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "input") c.input = v.get<std::string>();
      else if (key == "targets") c.targets = v.get<std::string>();
      else if (key == "target") c.target = v.get<std::vector<std::string>>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "sidecar") c.sidecar = v.get<std::string>();
      else if (key == "json") c.json = v.get<std::string>();
      else if (key == "x_column") c.x_column = v.get<std::string>();
      else if (key == "y_column") c.y_column = v.get<std::string>();
      else if (key == "response_column") c.response_column = v.get<std::string>();
      else if (key == "rescale") c.rescale = v.get<bool>();
      else if (key == "center") c.center = v.get<bool>();
      else if (key == "scenario") c.scenario = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
      else if (key == "n") c.n = v.is_array() ? v.get<std::vector<std::size_t>>() : std::vector<std::size_t>{v.get<std::size_t>()};
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "replicates") c.replicates = v.get<std::size_t>();
      else if (key == "by_column") c.by_column = v.get<bool>();
      else if (key == "method") c.method = v.get<std::string>();
      else if (key == "methods") c.methods = v.get<std::vector<std::string>>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "eta") c.eta = v.get<double>();
      else if (key == "etas") c.etas = v.get<std::vector<double>>();
      else if (key == "m") c.m = v.get<std::size_t>();
      else if (key == "M") c.M = v.get<std::size_t>();
      else if (key == "n_validation") c.n_validation = v.get<std::size_t>();
      else if (key == "nugget") c.nugget = v.get<double>();
      else if (key == "partial_sill") c.partial_sill = v.get<double>();
      else if (key == "range") c.range = v.get<double>();
      else if (key == "smoothness") c.smoothness = v.get<double>();
      else if (key == "kappa_grid") c.kappa_grid = v.get<std::vector<double>>();
      else if (key == "jobs") c.jobs = v.get<std::size_t>();
      else throw InvalidArgument("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Logger log(err);
  RunConfig cfg;

  // A --config file supplies defaults that the remaining flags override.
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::string path;
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[k + 1];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    }
    if (path.empty()) {
      continue;
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err << "scp: error: cannot read config " << path << '\n';
      return 2;
    }
    std::ostringstream text;
    text << file.rdbuf();
    try {
      apply_config_json(cfg, text.str());
    } catch (const Error& e) {
      err << "scp: error: " << e.what() << '\n';
      return 2;
    }
  }

  CLI::App app{"Spatial conformal prediction: simulate, predict, evaluate", "scp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "scp 0.1.0");

  auto* simulate = app.add_subcommand("simulate", "write one simulated scenario as CSV");
  auto* predict = app.add_subcommand("predict", "prediction sets at target locations");
  auto* contour = app.add_subcommand("contour", "plausibility step function at one target");
  auto* benchmark = app.add_subcommand("benchmark", "leave-one-out coverage/width/score table");
  auto* sensitivity =
      app.add_subcommand("sensitivity", "fixed-parameter sweep on the first scenario");
  auto* tune = app.add_subcommand("tune", "choose the slscp bandwidth by validation score");

  std::vector<std::unique_ptr<Flags>> flags;
  auto flags_for = [&](CLI::App* sub) -> Flags& {
    flags.push_back(std::make_unique<Flags>(Flags{sub, cfg, {}}));
    return *flags.back();
  };
  {
    auto& f = flags_for(simulate);
    f.list("scenario", cfg.scenario, "scenario id 1..8");
    f.list("n", cfg.n, "grid side N (N*N locations)");
    f.optional("seed", cfg.seed, "RNG seed (default: random, logged)");
    f.value("sidecar", cfg.sidecar, "JSON sidecar path (default: <output>.json)");
    f.common(kConfigHelp);
  }
  {
    auto& f = flags_for(predict);
    f.io_input();
    f.value("targets", cfg.targets, "CSV of target locations");
    f.strings("target", cfg.target, "target location x,y (repeatable)");
    f.value("method", cfg.method, "gscp, lscp, slscp or kriging");
    f.method_params();
    f.covariance();
    f.common(kConfigHelp);
  }
  {
    auto& f = flags_for(contour);
    f.io_input();
    f.value("targets", cfg.targets, "CSV holding the target location");
    f.strings("target", cfg.target, "target location x,y");
    f.value("method", cfg.method, "gscp, lscp or slscp");
    f.method_params();
    f.covariance();
    f.common(kConfigHelp);
  }
  {
    auto& f = flags_for(benchmark);
    f.list("scenario", cfg.scenario, "scenario ids");
    f.list("n", cfg.n, "grid sides");
    f.optional("seed", cfg.seed, "first RNG seed (required); replicate r uses seed + r");
    f.value("replicates", cfg.replicates, "datasets per scenario and N");
    f.list("methods", cfg.methods, "methods to compare");
    f.method_params();
    f.covariance();
    f.toggle("by_column", cfg.by_column, "include per-s_x breakdown in the JSON report");
    f.value("json", cfg.json, "write full reports as JSON");
    f.common(kConfigHelp);
  }
  {
    auto& f = flags_for(sensitivity);
    f.list("n", cfg.n, "grid side");
    f.optional("seed", cfg.seed, "first RNG seed (required)");
    f.value("replicates", cfg.replicates, "datasets");
    f.value("alpha", cfg.alpha, "miscoverage level");
    f.common(kConfigHelp);
  }
  {
    auto& f = flags_for(tune);
    f.io_input();
    f.list("etas", cfg.etas, "candidate bandwidths");
    f.value("alpha", cfg.alpha, "miscoverage level");
    f.value("n_validation", cfg.n_validation, "validation locations");
    f.optional("seed", cfg.seed, "RNG seed for the validation split (default: random, logged)");
    f.covariance();
    f.common(kConfigHelp);
  }

  std::vector<std::string> argv(args);
  const auto subs = app.get_subcommands([](CLI::App*) { return true; });
  const bool has_command = std::any_of(argv.begin(), argv.end(), [&](const std::string& a) {
    return std::any_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->check_name(a); });
  });
  if (!has_command && !cfg.command.empty()) {
    argv.insert(argv.begin(), cfg.command);
  }
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(cfg, out, log);
    if (predict->parsed()) return cmd_predict(cfg, out, log);
    if (contour->parsed()) return cmd_contour(cfg, out, log);
    if (benchmark->parsed()) return cmd_benchmark(cfg, out, log);
    if (sensitivity->parsed()) return cmd_sensitivity(cfg, out, log);
    if (tune->parsed()) return cmd_tune(cfg, out, log);
  } catch (const UsageError& e) {
    log.log(LogLevel::error, e.what());
    return 2;
  } catch (const Error& e) {
    log.log(LogLevel::error, e.what());
    return 1;
  } catch (const std::exception& e) {
    log.log(LogLevel::error, e.what());
    return 1;
  }
  return 2;
}

}  // namespace scp::cli
