#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "mzrecoil/errors.hpp"

namespace mzr {

// Adaptive composite Simpson with Richardson acceptance |S2 - S1| <= 15 tol.
// Tolerance is absolute, applied independently to real and imaginary parts.
// Throws numeric_error when max_depth refinement still misses the tolerance.
std::complex<double> adaptive_simpson(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double abs_tol = 1e-10,
                                      int max_depth = 32);

double adaptive_simpson_real(const std::function<double(double)>& f, double a, double b,
                             double abs_tol = 1e-10, int max_depth = 32);

// Fixed-node composite Simpson weights on [a, b] with n nodes (n odd, n >= 3).
// weights sum to (b - a).
void simpson_nodes(double a, double b, int n, std::vector<double>& nodes,
                   std::vector<double>& weights);

} // namespace mzr
