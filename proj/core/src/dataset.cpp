#include "scp/dataset.hpp"

#include <cmath>
#include <string>

#include "scp/errors.hpp"

namespace scp {

void SpatialDataset::validate() const {
  if (locations.size() != responses.size()) {
    throw InvalidArgument("dataset: " + std::to_string(locations.size()) + " locations but " +
                          std::to_string(responses.size()) + " responses");
  }
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (!std::isfinite(locations[i].x) || !std::isfinite(locations[i].y) ||
        !std::isfinite(responses[i])) {
      throw InvalidArgument("dataset: non-finite value in row " + std::to_string(i));
    }
  }
}

SpatialDataset SpatialDataset::subset(std::span<const std::size_t> indices) const {
  SpatialDataset out;
  out.locations.reserve(indices.size());
  out.responses.reserve(indices.size());
  for (std::size_t i : indices) {
    out.locations.push_back(locations.at(i));
    out.responses.push_back(responses.at(i));
  }
  return out;
}

double mean(std::span<const double> values) {
  if (values.empty()) {
    return 0.0;
  }
  double s = 0.0;
  for (double v : values) {
    s += v;
  }
  return s / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) {
    return 0.0;
  }
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) {
    s += (v - m) * (v - m);
  }
  return s / static_cast<double>(values.size() - 1);
}

}  // namespace scp
