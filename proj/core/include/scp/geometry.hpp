#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace scp {

/// A location in the plane. Coordinates are unitless (typically [0,1]^2).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

/// Indices of the `k` points closest to `target`, closest first.
///
/// Squared distances that agree to a relative 1e-12 count as ties and are
/// ordered by index, so grid layouts give the same answer regardless of how
/// the coordinates were rounded. `exclude` removes one index from
/// consideration (leave-one-out folds). `k` larger than the candidate count
/// returns every candidate.
std::vector<std::size_t> nearest_indices(std::span<const Point> points, Point target,
                                         std::size_t k,
                                         std::optional<std::size_t> exclude = std::nullopt);

/// Precomputed k-nearest-neighbour lists for every point of a fixed set.
class NeighborTable {
 public:
  NeighborTable(std::span<const Point> points, std::size_t k);

  std::size_t k() const { return k_; }
  std::size_t size() const { return count_; }

  /// Neighbours of point `i` (itself excluded), closest first.
  std::span<const std::size_t> neighbors(std::size_t i) const {
    return {lists_.data() + i * k_, k_};
  }

 private:
  std::size_t k_;
  std::size_t count_;
  std::vector<std::size_t> lists_;
};

}  // namespace scp
