#ifndef HELMFIELD_GRID_HPP
#define HELMFIELD_GRID_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "helmfield/common.hpp"

namespace helmfield {

/// Square planar sampling grid: n points per side, uniform spacing,
/// row-major indexing with x running fastest.
struct Grid2D {
  Grid2D(int n_points_per_side, double spacing_meters,
         std::array<double, 2> origin_meters = {0.0, 0.0});

  int n;
  double spacing_m;
  std::array<double, 2> origin_m;

  int point_count() const { return n * n; }

  bool operator==(const Grid2D& other) const = default;
};

struct Point2 {
  double x_m;
  double y_m;
};

/// Subset of grid indices where microphones sit. Indices are strictly
/// increasing and duplicate-free; seed records the draw (0 if explicit).
struct MeasurementMask {
  std::vector<int> indices;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(indices.size()); }
};

Point2 index_to_position(const Grid2D& grid, int idx);

/// Inverse of index_to_position on exact grid points.
int position_to_index(const Grid2D& grid, double x_m, double y_m);

/// Draws m distinct indices uniformly without replacement; result is
/// sorted ascending and fully determined by (grid, m, seed).
MeasurementMask draw_mask(const Grid2D& grid, int m, std::uint64_t seed);

/// Grid indices whose full 5-point stencil fits inside the grid.
std::vector<int> interior_indices(const Grid2D& grid);

}  // namespace helmfield

#endif
