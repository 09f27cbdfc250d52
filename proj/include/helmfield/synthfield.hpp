#ifndef HELMFIELD_SYNTHFIELD_HPP
#define HELMFIELD_SYNTHFIELD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "helmfield/field.hpp"

namespace helmfield {

/// Superposition of in-plane plane waves:
/// p(r) = sum_q a_q exp(-j k (x cos(theta_q) + y sin(theta_q))).
PressureField plane_wave_field(const Grid2D& grid, double freq_hz,
                               std::span<const double> angles_deg,
                               std::span<const Complex> amplitudes);

/// Fixed set of wave directions/amplitudes reusable across frequencies,
/// mimicking one acoustic scene observed at several frequencies.
struct PlaneWaveSet {
  std::vector<double> angles_deg;
  std::vector<Complex> amplitudes;
};

/// Angles uniform in [0, 360), amplitudes standard complex Gaussian.
PlaneWaveSet random_plane_waves(int count, std::uint64_t seed);

PressureField plane_wave_field(const Grid2D& grid, double freq_hz,
                               const PlaneWaveSet& waves);

/// Outgoing cylindrical wave amplitude * H0^(2)(k * dist) from a line
/// source strictly outside the grid (clearance of at least one spacing).
PressureField cylindrical_wave_field(const Grid2D& grid, double freq_hz,
                                     std::array<double, 2> source_xy_m,
                                     Complex amplitude);

/// Free-space point source amplitude * e^{-j k r} / (4 pi r) evaluated on
/// the plane, with r the 3-D distance to source_xyz_m. Out of model: it
/// solves the 3-D Helmholtz equation, not the in-plane 2-D one, so it is
/// for robustness experiments only and never a reconstruction oracle.
PressureField point_source_field_3d(const Grid2D& grid, double freq_hz,
                                    std::array<double, 3> source_xyz_m,
                                    Complex amplitude);

/// Gathers field values at the masked indices.
MeasurementSet sample_field(const PressureField& field,
                            const MeasurementMask& mask);

/// Adds circular complex Gaussian noise rescaled so the realized SNR is
/// exactly snr_db. Passing +infinity returns the measurements unchanged.
MeasurementSet add_noise(const MeasurementSet& ms, double snr_db,
                         std::uint64_t seed);

}  // namespace helmfield

#endif
