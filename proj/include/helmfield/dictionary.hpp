#ifndef HELMFIELD_DICTIONARY_HPP
#define HELMFIELD_DICTIONARY_HPP

#include <cstdint>
#include <vector>

#include "helmfield/common.hpp"
#include "helmfield/grid.hpp"
#include "helmfield/rng.hpp"

namespace helmfield {

/// Complex n^2 x L atom matrix; column l models frequency atom_freqs_hz[l].
struct Dictionary {
  Grid2D grid;
  std::vector<double> atom_freqs_hz;  // strictly increasing
  CMatrix atoms;

  int num_atoms() const { return static_cast<int>(atoms.cols()); }
};

/// count equally spaced frequencies covering [band_lo, band_hi] inclusive.
std::vector<double> atom_frequencies(double band_lo_hz, double band_hi_hz,
                                     int count);

/// Spatial covariance of a diffuse field at one frequency:
/// entry (s,t) = j0(k * ||r_s - r_t||). Symmetric, unit diagonal.
RMatrix bessel_covariance(const Grid2D& grid, double freq_hz);

/// Lower-triangular Cholesky factor of sigma + jitter*I, escalating the
/// jitter from 1e-10 to 1e-6 before giving up with NumericError.
RMatrix covariance_factor(const RMatrix& sigma);

/// One draw of a circularly symmetric complex Gaussian with covariance
/// factor * factor^T: (factor z1 + i factor z2) / sqrt(2), z1 drawn fully
/// before z2.
CVector draw_complex_gaussian(const RMatrix& factor, Rng& rng);

/// The baseline dictionary: one unit-norm Gaussian atom per frequency,
/// drawn column by column from one stream seeded with `seed`.
Dictionary sample_baseline_dictionary(const Grid2D& grid,
                                      const std::vector<double>& atom_freqs_hz,
                                      std::uint64_t seed);

/// Rows of the atom matrix at the masked positions (M x L).
CMatrix measured_rows(const Dictionary& dict, const MeasurementMask& mask);
CMatrix measured_rows(const CMatrix& atoms, const MeasurementMask& mask);

}  // namespace helmfield

#endif
