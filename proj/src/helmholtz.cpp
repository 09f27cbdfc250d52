#include "helmfield/helmholtz.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helmfield {

HelmholtzOperator build_operator(const Grid2D& grid, double freq_hz,
                                 OperatorVariant variant,
                                 double speed_of_sound) {
  if (!(freq_hz > 0.0))
    throw std::invalid_argument("build_operator: freq_hz must be > 0");

  const int n = grid.n;
  const int total = grid.point_count();
  const double h = grid.spacing_m;
  const double k = wavenumber(freq_hz, speed_of_sound);
  const double diag = -4.0 + k * k * h * h;

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(total) * 5);
  for (int i = 0; i < total; ++i) {
    entries.emplace_back(i, i, diag);
    if (i + 1 < total) {
      const bool crosses_row_edge = (i % n) == n - 1;
      if (variant == OperatorVariant::PaperToeplitz || !crosses_row_edge) {
        entries.emplace_back(i, i + 1, 1.0);
        entries.emplace_back(i + 1, i, 1.0);
      }
    }
    if (i + n < total) {
      entries.emplace_back(i, i + n, 1.0);
      entries.emplace_back(i + n, i, 1.0);
    }
  }

  HelmholtzOperator op{n, h, k, variant, SparseReal(total, total)};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  op.matrix.makeCompressed();
  return op;
}

CVector residual(const HelmholtzOperator& op, const CVector& field) {
  if (field.size() != op.matrix.rows())
    throw std::invalid_argument("residual: field length != n^2");
  const RVector re_in = field.real();
  const RVector im_in = field.imag();
  const RVector re = op.matrix * re_in;
  const RVector im = op.matrix * im_in;
  CVector out(field.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

double residual_norm_sq(const HelmholtzOperator& op, const CVector& field) {
  return residual(op, field).squaredNorm();
}

double interior_relative_residual(const HelmholtzOperator& op,
                                  const CVector& field) {
  const Grid2D grid(op.n, op.spacing_m);
  const CVector r = residual(op, field);
  double rn = 0.0, fn = 0.0;
  for (int idx : interior_indices(grid)) {
    rn += std::norm(r[idx]);
    fn += std::norm(field[idx]);
  }
  if (fn == 0.0)
    throw std::invalid_argument("interior_relative_residual: zero field");
  return std::sqrt(rn / fn);
}

double plane_wave_stencil_symbol(double wavenumber, double spacing_m,
                                 double theta_rad) {
  const double kh = wavenumber * spacing_m;
  return -4.0 + kh * kh + 2.0 * std::cos(kh * std::cos(theta_rad)) +
         2.0 * std::cos(kh * std::sin(theta_rad));
}

}  // namespace helmfield
