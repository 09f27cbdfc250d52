#include "helmfield/dictionary.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "helmfield/special_functions.hpp"

namespace helmfield {

std::vector<double> atom_frequencies(double band_lo_hz, double band_hi_hz,
                                     int count) {
  if (!(band_lo_hz > 0.0))
    throw std::invalid_argument("atom_frequencies: band_lo must be > 0");
  if (!(band_hi_hz > band_lo_hz))
    throw std::invalid_argument("atom_frequencies: band_hi must exceed band_lo");
  if (count < 2)
    throw std::invalid_argument("atom_frequencies: need at least 2 atoms");

  const double step = (band_hi_hz - band_lo_hz) / (count - 1);
  std::vector<double> freqs(count);
  for (int i = 0; i < count; ++i) freqs[i] = band_lo_hz + i * step;
  freqs.back() = band_hi_hz;  // exact endpoint
  return freqs;
}

RMatrix bessel_covariance(const Grid2D& grid, double freq_hz) {
  if (!(freq_hz > 0.0))
    throw std::invalid_argument("bessel_covariance: freq_hz must be > 0");
  const int total = grid.point_count();
  const double k = wavenumber(freq_hz);

  RMatrix sigma(total, total);
  for (int s = 0; s < total; ++s) {
    const Point2 ps = index_to_position(grid, s);
    sigma(s, s) = 1.0;
    for (int t = s + 1; t < total; ++t) {
      const Point2 pt = index_to_position(grid, t);
      const double dist = std::hypot(ps.x_m - pt.x_m, ps.y_m - pt.y_m);
      const double value = j0_spherical(k * dist);
      sigma(s, t) = value;
      sigma(t, s) = value;
    }
  }
  return sigma;
}

RMatrix covariance_factor(const RMatrix& sigma) {
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.01; jitter *= 100.0) {
    RMatrix jittered = sigma;
    jittered.diagonal().array() += jitter;
    Eigen::LLT<RMatrix> llt(jittered);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw NumericError("covariance_factor: Cholesky failed up to jitter 1e-6");
}

CVector draw_complex_gaussian(const RMatrix& factor, Rng& rng) {
  const auto dim = factor.rows();
  RVector z_re(dim), z_im(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z_re[i] = rng.normal();
  for (Eigen::Index i = 0; i < dim; ++i) z_im[i] = rng.normal();
  const RVector re = factor * z_re;
  const RVector im = factor * z_im;
  CVector atom(dim);
  const double scale = 1.0 / std::sqrt(2.0);
  atom.real() = scale * re;
  atom.imag() = scale * im;
  return atom;
}

Dictionary sample_baseline_dictionary(const Grid2D& grid,
                                      const std::vector<double>& atom_freqs_hz,
                                      std::uint64_t seed) {
  if (atom_freqs_hz.empty())
    throw std::invalid_argument("sample_baseline_dictionary: no frequencies");
  for (std::size_t l = 0; l < atom_freqs_hz.size(); ++l) {
    if (!(atom_freqs_hz[l] > 0.0))
      throw std::invalid_argument("sample_baseline_dictionary: frequencies must be > 0");
    if (l > 0 && !(atom_freqs_hz[l] > atom_freqs_hz[l - 1]))
      throw std::invalid_argument(
          "sample_baseline_dictionary: frequencies must be strictly increasing");
  }

  const int total = grid.point_count();
  const int num_atoms = static_cast<int>(atom_freqs_hz.size());
  Dictionary dict{grid, atom_freqs_hz, CMatrix(total, num_atoms)};

  Rng rng(seed);
  for (int l = 0; l < num_atoms; ++l) {
    const RMatrix factor =
        covariance_factor(bessel_covariance(grid, atom_freqs_hz[l]));
    CVector atom = draw_complex_gaussian(factor, rng);
    const double norm = atom.norm();
    if (norm == 0.0)
      throw NumericError("sample_baseline_dictionary: drew a zero atom");
    dict.atoms.col(l) = atom / norm;
  }
  return dict;
}

CMatrix measured_rows(const CMatrix& atoms, const MeasurementMask& mask) {
  CMatrix out(mask.size(), atoms.cols());
  for (int i = 0; i < mask.size(); ++i) {
    const int idx = mask.indices[i];
    if (idx < 0 || idx >= atoms.rows())
      throw std::out_of_range("measured_rows: mask index out of range");
    out.row(i) = atoms.row(idx);
  }
  return out;
}

CMatrix measured_rows(const Dictionary& dict, const MeasurementMask& mask) {
  return measured_rows(dict.atoms, mask);
}

}  // namespace helmfield
