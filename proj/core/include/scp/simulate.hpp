#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "scp/covariance.hpp"
#include "scp/dataset.hpp"

namespace scp {

/// One of the eight simulation designs on the regular N x N grid
/// {1/N, ..., 1}^2 with latent field X ~ GP(0, Matern(base_params)) and
/// independent standard normal noise E:
///   1  X + E                       5  sign(X) |X|^(s_x + 1) + E
///   2  X^3 + E                     6  sqrt(w/3) X + sqrt(1 - w) E,  w = Phi((s_x - 0.5)/0.1)
///   3  q(Phi(X / sqrt 3)) + E      7  X + s_x E
///   4  sqrt(3) X |E|               8  X + 10 exp(-50 |s - (0.5, 0.5)|^2)
/// In scenario 3, q is the exponential quantile with scale sqrt(3) (variance 3).
struct ScenarioSpec {
  int scenario_id = 1;
  std::size_t grid_side = 20;
  std::uint64_t seed = 0;
  MaternParams base_params{0.0, 3.0, 0.1, 0.7};

  void validate() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

std::string to_json(const ScenarioSpec& spec);
/// Throws InvalidArgument on malformed JSON, unknown keys or invalid values.
ScenarioSpec scenario_spec_from_json(const std::string& text);

/// Grid locations ((ix+1)/N, (iy+1)/N) at index iy*N + ix.
std::vector<Point> grid_locations(std::size_t side);

/// Exact draw L z from the covariance of `locations` (plus 1e-10 on the
/// diagonal), z iid standard normal from `rng`.
std::vector<double> sample_gp(std::span<const Point> locations, const MaternParams& params,
                              std::mt19937_64& rng);
std::vector<double> sample_gp(std::span<const Point> locations, const MaternParams& params,
                              std::uint64_t seed);

/// The ingredients of a scenario before they are combined. X and E come from
/// separate generator streams derived from the spec's seed.
struct ScenarioFields {
  std::vector<Point> locations;
  std::vector<double> latent;
  std::vector<double> noise;
};

ScenarioFields generate_scenario_fields(const ScenarioSpec& spec);

/// Response of scenario `id` at location s given X(s) = latent and E(s) = noise.
double combine_scenario(int id, Point s, double latent, double noise);

SpatialDataset combine_scenario(int id, const ScenarioFields& fields);

SpatialDataset generate_scenario(const ScenarioSpec& spec);

/// n iid uniform points in [0, 1]^2.
std::vector<Point> sample_uniform_locations(std::size_t n, std::uint64_t seed);

}  // namespace scp
