#include "scp/simulate.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include "json.hpp"

#include "scp/errors.hpp"
#include "scp/special.hpp"

namespace scp {
namespace {

constexpr double kSamplingJitter = 1e-10;
constexpr std::uint64_t kLatentStream = 0x5851f42d4c957f2dULL;
constexpr std::uint64_t kNoiseStream = 0x14057b7ef767814fULL;

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(tag >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

void ScenarioSpec::validate() const {
  if (scenario_id < 1 || scenario_id > 8) {
    throw InvalidArgument("ScenarioSpec: scenario_id must be 1..8");
  }
  if (grid_side < 2) {
    throw InvalidArgument("ScenarioSpec: grid_side must be >= 2");
  }
  base_params.validate();
}

std::string to_json(const ScenarioSpec& spec) {
  nlohmann::ordered_json j;
  j["scenario_id"] = spec.scenario_id;
  j["grid_side"] = spec.grid_side;
  j["seed"] = spec.seed;
  j["base_params"] = {{"nugget", spec.base_params.nugget},
                      {"partial_sill", spec.base_params.partial_sill},
                      {"range", spec.base_params.range},
                      {"smoothness", spec.base_params.smoothness}};
  return j.dump(2);
}

ScenarioSpec scenario_spec_from_json(const std::string& text) {
  ScenarioSpec spec;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario_id") {
        spec.scenario_id = value.get<int>();
      } else if (key == "grid_side") {
        spec.grid_side = value.get<std::size_t>();
      } else if (key == "seed") {
        spec.seed = value.get<std::uint64_t>();
      } else if (key == "base_params") {
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "nugget") {
            spec.base_params.nugget = pv.get<double>();
          } else if (pk == "partial_sill") {
            spec.base_params.partial_sill = pv.get<double>();
          } else if (pk == "range") {
            spec.base_params.range = pv.get<double>();
          } else if (pk == "smoothness") {
            spec.base_params.smoothness = pv.get<double>();
          } else {
            throw InvalidArgument("ScenarioSpec: unknown key base_params." + pk);
          }
        }
      } else {
        throw InvalidArgument("ScenarioSpec: unknown key " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("ScenarioSpec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::vector<Point> grid_locations(std::size_t side) {
  std::vector<Point> out;
  out.reserve(side * side);
  const double n = static_cast<double>(side);
  for (std::size_t iy = 0; iy < side; ++iy) {
    for (std::size_t ix = 0; ix < side; ++ix) {
      out.push_back({static_cast<double>(ix + 1) / n, static_cast<double>(iy + 1) / n});
    }
  }
  return out;
}

std::vector<double> sample_gp(std::span<const Point> locations, const MaternParams& params,
                              std::mt19937_64& rng) {
  if (locations.empty()) {
    return {};
  }
  MaternParams p = params;
  Eigen::MatrixXd sigma;
  if (p.nugget == 0.0) {
    // Jitter only for the draw; coincident points are then allowed.
    p.nugget = kSamplingJitter;
    sigma = covariance_matrix(locations, p).matrix();
  } else {
    sigma = covariance_matrix(locations, p).matrix();
    sigma.diagonal().array() += kSamplingJitter;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw DegenerateCovariance("sample_gp: covariance is not positive definite");
  }
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(static_cast<Eigen::Index>(locations.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    z(i) = normal(rng);
  }
  const Eigen::VectorXd x = llt.matrixL() * z;
  return {x.data(), x.data() + x.size()};
}

std::vector<double> sample_gp(std::span<const Point> locations, const MaternParams& params,
                              std::uint64_t seed) {
  auto rng = stream(seed, kLatentStream);
  return sample_gp(locations, params, rng);
}

ScenarioFields generate_scenario_fields(const ScenarioSpec& spec) {
  spec.validate();
  ScenarioFields f;
  f.locations = grid_locations(spec.grid_side);
  f.latent = sample_gp(f.locations, spec.base_params, spec.seed);
  auto rng = stream(spec.seed, kNoiseStream);
  std::normal_distribution<double> normal;
  f.noise.resize(f.locations.size());
  for (double& e : f.noise) {
    e = normal(rng);
  }
  return f;
}

double combine_scenario(int id, Point s, double x, double e) {
  const double root3 = std::numbers::sqrt3;
  switch (id) {
    case 1:
      return x + e;
    case 2:
      return x * x * x + e;
    case 3:
      // Exponential quantile -sqrt(3) log(1 - p) at p = Phi(x / sqrt 3), written
      // through Phi(-x / sqrt 3) to keep precision in the upper tail.
      return -root3 * std::log(special::normal_cdf(-x / root3)) + e;
    case 4:
      return root3 * x * std::abs(e);
    case 5:
      return std::copysign(std::pow(std::abs(x), s.x + 1.0), x) + e;
    case 6: {
      const double w = special::normal_cdf((s.x - 0.5) / 0.1);
      return std::sqrt(w / 3.0) * x + std::sqrt(1.0 - w) * e;
    }
    case 7:
      return x + s.x * e;
    case 8: {
      const double dx = s.x - 0.5;
      const double dy = s.y - 0.5;
      return x + 10.0 * std::exp(-50.0 * (dx * dx + dy * dy));
    }
    default:
      throw InvalidArgument("combine_scenario: scenario id must be 1..8");
  }
}

SpatialDataset combine_scenario(int id, const ScenarioFields& fields) {
  if (fields.latent.size() != fields.locations.size() ||
      fields.noise.size() != fields.locations.size()) {
    throw InvalidArgument("combine_scenario: field lengths differ");
  }
  SpatialDataset out;
  out.locations = fields.locations;
  out.responses.resize(fields.locations.size());
  for (std::size_t i = 0; i < out.responses.size(); ++i) {
    out.responses[i] = combine_scenario(id, fields.locations[i], fields.latent[i], fields.noise[i]);
  }
  return out;
}

SpatialDataset generate_scenario(const ScenarioSpec& spec) {
  return combine_scenario(spec.scenario_id, generate_scenario_fields(spec));
}

std::vector<Point> sample_uniform_locations(std::size_t n, std::uint64_t seed) {
  auto rng = stream(seed, kLatentStream ^ kNoiseStream);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out(n);
  for (Point& p : out) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return out;
}

}  // namespace scp
