#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scp/geometry.hpp"

namespace scp {

/// Locations paired with scalar responses.
struct SpatialDataset {
  std::vector<Point> locations;
  std::vector<double> responses;

  std::size_t size() const { return locations.size(); }
  bool empty() const { return locations.empty(); }

  /// Throws InvalidArgument when lengths differ or any value is non-finite.
  void validate() const;

  SpatialDataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const SpatialDataset&, const SpatialDataset&) = default;
};

double mean(std::span<const double> values);
double sample_variance(std::span<const double> values);

}  // namespace scp
