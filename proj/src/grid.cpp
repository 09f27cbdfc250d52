#include "helmfield/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "helmfield/rng.hpp"

namespace helmfield {

Grid2D::Grid2D(int n_points_per_side, double spacing_meters,
               std::array<double, 2> origin_meters)
    : n(n_points_per_side), spacing_m(spacing_meters), origin_m(origin_meters) {
  if (n < 3) throw std::invalid_argument("Grid2D: n must be >= 3");
  if (!(spacing_m > 0.0)) throw std::invalid_argument("Grid2D: spacing must be > 0");
}

Point2 index_to_position(const Grid2D& grid, int idx) {
  if (idx < 0 || idx >= grid.point_count())
    throw std::out_of_range("index_to_position: idx out of range");
  const int col = idx % grid.n;
  const int row = idx / grid.n;
  return {grid.origin_m[0] + col * grid.spacing_m,
          grid.origin_m[1] + row * grid.spacing_m};
}

int position_to_index(const Grid2D& grid, double x_m, double y_m) {
  const int col = static_cast<int>(std::lround((x_m - grid.origin_m[0]) / grid.spacing_m));
  const int row = static_cast<int>(std::lround((y_m - grid.origin_m[1]) / grid.spacing_m));
  if (col < 0 || col >= grid.n || row < 0 || row >= grid.n)
    throw std::out_of_range("position_to_index: point outside grid");
  return row * grid.n + col;
}

MeasurementMask draw_mask(const Grid2D& grid, int m, std::uint64_t seed) {
  const int total = grid.point_count();
  if (m < 1 || m >= total)
    throw std::invalid_argument("draw_mask: m must satisfy 1 <= m < n^2");

  // Partial Fisher-Yates over all indices; the first m slots are the draw.
  std::vector<int> pool(total);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < m; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_below(
                           static_cast<std::uint64_t>(total - i)));
    std::swap(pool[i], pool[j]);
  }
  MeasurementMask mask;
  mask.indices.assign(pool.begin(), pool.begin() + m);
  std::sort(mask.indices.begin(), mask.indices.end());
  mask.seed = seed;
  return mask;
}

std::vector<int> interior_indices(const Grid2D& grid) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(grid.n - 2) * (grid.n - 2));
  for (int row = 1; row < grid.n - 1; ++row)
    for (int col = 1; col < grid.n - 1; ++col) out.push_back(row * grid.n + col);
  return out;
}

}  // namespace helmfield
