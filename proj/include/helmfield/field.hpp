#ifndef HELMFIELD_FIELD_HPP
#define HELMFIELD_FIELD_HPP

#include "helmfield/common.hpp"
#include "helmfield/grid.hpp"

namespace helmfield {

/// Complex pressure on every grid point at one frequency.
struct PressureField {
  Grid2D grid;
  double freq_hz;
  CVector values;  // length n^2, row-major
};

/// Observed pressures at the masked grid positions.
struct MeasurementSet {
  MeasurementMask mask;
  CVector values;  // length mask.size()
  double freq_hz;
};

}  // namespace helmfield

#endif
