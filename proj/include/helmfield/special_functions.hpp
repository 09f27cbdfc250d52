#ifndef HELMFIELD_SPECIAL_FUNCTIONS_HPP
#define HELMFIELD_SPECIAL_FUNCTIONS_HPP

#include "helmfield/common.hpp"

namespace helmfield {

/// Zero-order spherical Bessel function sin(x)/x, with a series branch
/// near zero to avoid cancellation. j0_spherical(0) = 1.
double j0_spherical(double x);

/// Zero-order cylindrical Bessel functions of the first and second kind.
/// Power series for small arguments, Hankel asymptotic expansion for
/// large ones; see bessel.cpp for the crossover choice.
double bessel_j0(double x);
double bessel_y0(double x);

/// Zero-order Hankel function of the second kind, J0(x) - i*Y0(x).
/// Outgoing cylindrical wave under the e^{j omega t} convention.
Complex hankel2_0(double x);

}  // namespace helmfield

#endif
