#include "scp/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace scp {
namespace {

constexpr double kTieTolerance = 1e-12;

struct Ranked {
  double d2;
  std::size_t index;
};

bool ranked_less(const Ranked& a, const Ranked& b) {
  return a.d2 < b.d2 || (a.d2 == b.d2 && a.index < b.index);
}

// Sorted by (d2, index); runs of near-equal distances are re-sorted by index.
void canonicalize(std::vector<Ranked>& r) {
  std::sort(r.begin(), r.end(), ranked_less);
  std::size_t start = 0;
  while (start < r.size()) {
    std::size_t end = start + 1;
    const double base = r[start].d2;
    while (end < r.size() && r[end].d2 - base <= kTieTolerance * std::max(base, 1e-300)) {
      ++end;
    }
    if (end - start > 1) {
      std::sort(r.begin() + static_cast<std::ptrdiff_t>(start),
                r.begin() + static_cast<std::ptrdiff_t>(end),
                [](const Ranked& a, const Ranked& b) { return a.index < b.index; });
    }
    start = end;
  }
}

}  // namespace

std::vector<std::size_t> nearest_indices(std::span<const Point> points, Point target,
                                         std::size_t k, std::optional<std::size_t> exclude) {
  std::vector<Ranked> ranked;
  ranked.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (exclude && *exclude == i) {
      continue;
    }
    ranked.push_back({squared_distance(points[i], target), i});
  }
  if (k < ranked.size()) {
    // Keep everything that could tie with the k-th entry, then canonicalize.
    std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                     ranked.end(), ranked_less);
    const double cutoff = ranked[k].d2 * (1.0 + 4.0 * kTieTolerance) + 1e-300;
    auto keep = std::partition(ranked.begin(), ranked.end(),
                               [cutoff](const Ranked& r) { return r.d2 <= cutoff; });
    ranked.erase(keep, ranked.end());
  }
  canonicalize(ranked);
  const std::size_t take = std::min(k, ranked.size());
  std::vector<std::size_t> out(take);
  for (std::size_t i = 0; i < take; ++i) {
    out[i] = ranked[i].index;
  }
  return out;
}

NeighborTable::NeighborTable(std::span<const Point> points, std::size_t k)
    : k_(std::min(k, points.empty() ? std::size_t{0} : points.size() - 1)),
      count_(points.size()),
      lists_(count_ * k_) {
  for (std::size_t i = 0; i < count_; ++i) {
    const auto nn = nearest_indices(points, points[i], k_, i);
    std::copy(nn.begin(), nn.end(), lists_.begin() + static_cast<std::ptrdiff_t>(i * k_));
  }
}

}  // namespace scp
