#pragma once
#include <complex>

namespace mzr {

// Error function of complex argument.
//
// Branches: Maclaurin series for |z| <= 3; Laplace continued fraction of the
// Faddeeva function for Re z >= 1, |z| >= 5.5; otherwise erf(Re z) plus a
// Gauss-Legendre integration of (2/sqrt(pi)) e^{-t^2} along the vertical
// segment. Quadrant reduction makes erf(-z) = -erf(z) and
// conj(erf(z)) = erf(conj z) exact.
//
// Relative accuracy ~1e-13 for |z| <= 10 away from the complex zeros of erf
// (absolute ~1e-15 near them). |Im z| > 30 throws domain_error.
std::complex<double> complex_erf(std::complex<double> z);

} // namespace mzr
