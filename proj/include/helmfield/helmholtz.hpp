#ifndef HELMFIELD_HELMHOLTZ_HPP
#define HELMFIELD_HELMHOLTZ_HPP

#include "helmfield/common.hpp"
#include "helmfield/grid.hpp"

namespace helmfield {

/// Finite-difference layout of the second-order operator.
///
/// PaperToeplitz keeps the matrix constant along every diagonal, which
/// couples the last point of each grid row to the first point of the
/// next. GridAware zeroes exactly those wrap-around couplings and is the
/// physically correct 5-point stencil on the grid.
enum class OperatorVariant { PaperToeplitz, GridAware };

/// Sparse n^2 x n^2 symmetric second-order difference operator H(k):
/// main diagonal -4 + k^2 h^2, unit entries at offsets +-1 and +-n.
struct HelmholtzOperator {
  int n;
  double spacing_m;
  double wavenumber;
  OperatorVariant variant;
  SparseReal matrix;
};

HelmholtzOperator build_operator(const Grid2D& grid, double freq_hz,
                                 OperatorVariant variant,
                                 double speed_of_sound = kSpeedOfSound);

/// H(k) * field.
CVector residual(const HelmholtzOperator& op, const CVector& field);

/// Squared Euclidean norm of H(k) * field.
double residual_norm_sq(const HelmholtzOperator& op, const CVector& field);

/// ||H(k) field|| / ||field||, both restricted to interior grid points.
/// Boundary rows of the stencil see truncated neighbourhoods, so only
/// interior points are meaningful when checking how well a field solves
/// the discrete equation.
double interior_relative_residual(const HelmholtzOperator& op,
                                  const CVector& field);

/// Value the 5-point stencil multiplies a unit plane wave by at interior
/// points: -4 + k^2 h^2 + 2 cos(k h cos(theta)) + 2 cos(k h sin(theta)).
double plane_wave_stencil_symbol(double wavenumber, double spacing_m,
                                 double theta_rad);

}  // namespace helmfield

#endif
