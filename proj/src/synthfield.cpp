#include "helmfield/synthfield.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helmfield/rng.hpp"
#include "helmfield/special_functions.hpp"

namespace helmfield {

PressureField plane_wave_field(const Grid2D& grid, double freq_hz,
                               std::span<const double> angles_deg,
                               std::span<const Complex> amplitudes) {
  if (angles_deg.size() != amplitudes.size() || angles_deg.empty())
    throw std::invalid_argument("plane_wave_field: need equal-length, non-empty wave lists");
  if (!(freq_hz > 0.0))
    throw std::invalid_argument("plane_wave_field: freq_hz must be > 0");

  const double k = wavenumber(freq_hz);
  const int total = grid.point_count();
  CVector values = CVector::Zero(total);
  for (std::size_t q = 0; q < angles_deg.size(); ++q) {
    const double theta = angles_deg[q] * kPi / 180.0;
    const double kx = k * std::cos(theta);
    const double ky = k * std::sin(theta);
    for (int idx = 0; idx < total; ++idx) {
      const Point2 p = index_to_position(grid, idx);
      const double phase = -(kx * p.x_m + ky * p.y_m);
      values[idx] += amplitudes[q] * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return {grid, freq_hz, std::move(values)};
}

PlaneWaveSet random_plane_waves(int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_plane_waves: count must be >= 1");
  Rng rng(seed);
  PlaneWaveSet waves;
  waves.angles_deg.reserve(count);
  waves.amplitudes.reserve(count);
  for (int q = 0; q < count; ++q) {
    waves.angles_deg.push_back(360.0 * rng.uniform());
    const double re = rng.normal();
    const double im = rng.normal();
    waves.amplitudes.emplace_back(re / std::sqrt(2.0), im / std::sqrt(2.0));
  }
  return waves;
}

PressureField plane_wave_field(const Grid2D& grid, double freq_hz,
                               const PlaneWaveSet& waves) {
  return plane_wave_field(grid, freq_hz, waves.angles_deg, waves.amplitudes);
}

PressureField cylindrical_wave_field(const Grid2D& grid, double freq_hz,
                                     std::array<double, 2> source_xy_m,
                                     Complex amplitude) {
  if (!(freq_hz > 0.0))
    throw std::invalid_argument("cylindrical_wave_field: freq_hz must be > 0");

  const int total = grid.point_count();
  const double k = wavenumber(freq_hz);
  double min_dist = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < total; ++idx) {
    const Point2 p = index_to_position(grid, idx);
    min_dist = std::min(min_dist, std::hypot(p.x_m - source_xy_m[0],
                                             p.y_m - source_xy_m[1]));
  }
  if (min_dist < grid.spacing_m)
    throw std::invalid_argument(
        "cylindrical_wave_field: source must clear the grid by at least one spacing");

  CVector values(total);
  if (amplitude == Complex{0.0, 0.0}) {
    values.setZero();
    return {grid, freq_hz, std::move(values)};
  }
  for (int idx = 0; idx < total; ++idx) {
    const Point2 p = index_to_position(grid, idx);
    const double dist = std::hypot(p.x_m - source_xy_m[0], p.y_m - source_xy_m[1]);
    values[idx] = amplitude * hankel2_0(k * dist);
  }
  return {grid, freq_hz, std::move(values)};
}

PressureField point_source_field_3d(const Grid2D& grid, double freq_hz,
                                    std::array<double, 3> source_xyz_m,
                                    Complex amplitude) {
  if (!(freq_hz > 0.0))
    throw std::invalid_argument("point_source_field_3d: freq_hz must be > 0");

  const int total = grid.point_count();
  const double k = wavenumber(freq_hz);
  CVector values(total);
  for (int idx = 0; idx < total; ++idx) {
    const Point2 p = index_to_position(grid, idx);
    const double dx = p.x_m - source_xyz_m[0];
    const double dy = p.y_m - source_xyz_m[1];
    const double dz = source_xyz_m[2];
    const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (r < grid.spacing_m)
      throw std::invalid_argument(
          "point_source_field_3d: source must clear the grid by at least one spacing");
    const double phase = -k * r;
    values[idx] = amplitude * Complex(std::cos(phase), std::sin(phase)) /
                  (4.0 * kPi * r);
  }
  return {grid, freq_hz, std::move(values)};
}

MeasurementSet sample_field(const PressureField& field,
                            const MeasurementMask& mask) {
  CVector values(mask.size());
  for (int i = 0; i < mask.size(); ++i) {
    const int idx = mask.indices[i];
    if (idx < 0 || idx >= field.values.size())
      throw std::out_of_range("sample_field: mask index out of range");
    values[i] = field.values[idx];
  }
  return {mask, std::move(values), field.freq_hz};
}

MeasurementSet add_noise(const MeasurementSet& ms, double snr_db,
                         std::uint64_t seed) {
  if (std::isnan(snr_db))
    throw std::invalid_argument("add_noise: snr_db must not be NaN");
  if (std::isinf(snr_db) && snr_db > 0.0) return ms;

  const double signal_sq = ms.values.squaredNorm();
  const double target_noise_sq = signal_sq / std::pow(10.0, snr_db / 10.0);

  Rng rng(seed);
  CVector noise(ms.values.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    noise[i] = Complex(re, im);
  }
  const double raw_sq = noise.squaredNorm();
  MeasurementSet out = ms;
  if (raw_sq > 0.0 && target_noise_sq > 0.0)
    out.values += noise * std::sqrt(target_noise_sq / raw_sq);
  return out;
}

}  // namespace helmfield
