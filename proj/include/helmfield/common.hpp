#ifndef HELMFIELD_COMMON_HPP
#define HELMFIELD_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace helmfield {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using SparseReal = Eigen::SparseMatrix<double>;

inline constexpr double kSpeedOfSound = 343.0;  // m/s, dry air at 20 C
inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a numeric procedure fails (factorization breakdown,
/// non-finite inputs, singular update systems).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an on-disk file does not match the expected layout.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

inline double wavenumber(double freq_hz, double speed_of_sound = kSpeedOfSound) {
  return 2.0 * kPi * freq_hz / speed_of_sound;
}

}  // namespace helmfield

#endif
