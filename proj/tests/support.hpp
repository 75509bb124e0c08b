#pragma once
// Shared fixtures: experiment parameters and independent test oracles.
#include <complex>
#include <cmath>

#include "mzrecoil/pipeline.hpp"

namespace testbed {

// Sodium-beam experiment parameters.
inline constexpr double kSpeed = 1400.0;        // m/s
inline constexpr double kWavenumber = 5.09067e11;
inline constexpr double kPhotonLambda = 589e-9;
inline constexpr double kPeriod = 2e-7;
inline constexpr double kOpenWidth = 1e-7;
inline constexpr int kSlits = 24;
inline constexpr double kY12 = 0.65;
inline constexpr double kY23 = 0.65;

inline mzr::BeamSpec beam() { return mzr::BeamSpec::from_wavenumber(kSpeed, kWavenumber); }
inline mzr::PhotonSpec photon() { return mzr::PhotonSpec::from_wavelength(kPhotonLambda); }
inline mzr::GratingSpec grating() {
    mzr::GratingSpec g;
    g.period_dg = kPeriod;
    g.open_width_delta = kOpenWidth;
    g.illuminated_slits_n = kSlits;
    return g;
}
inline mzr::Geometry geometry(double y_prime = 0.0) {
    mzr::Geometry g;
    g.y12 = kY12;
    g.y23 = kY23;
    g.y_prime_12 = y_prime;
    return g;
}

// Pipeline settings for full-geometry runs; extent 2^18 cells at delta/16.
inline mzr::PipelineSettings experiment_pipeline(double extent = 262144 * (1e-7 / 16.0)) {
    mzr::PipelineSettings s;
    s.beam = beam();
    s.photon = photon();
    s.grating = grating();
    s.geometry = geometry();
    s.grid.spacing = kOpenWidth / 16.0;
    s.grid.extent = extent;
    return s;
}

// Independent Maclaurin-series oracle in quad precision:
// erf(z) = (2/sqrt(pi)) sum (-1)^n z^{2n+1} / (n! (2n+1)), cutoff 1e-35.
struct Quad {
    __float128 re = 0, im = 0;
};
inline Quad qmul(Quad a, Quad b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Quad qadd(Quad a, Quad b) { return {a.re + b.re, a.im + b.im}; }
inline Quad qscale(Quad a, __float128 s) { return {a.re * s, a.im * s}; }
inline __float128 qmag(Quad a) {
    const __float128 r = a.re < 0 ? -a.re : a.re;
    const __float128 i = a.im < 0 ? -a.im : a.im;
    return r > i ? r : i;
}

inline std::complex<double> erf_series_oracle(std::complex<double> zd) {
    const Quad z{static_cast<__float128>(zd.real()), static_cast<__float128>(zd.imag())};
    const Quad zz = qmul(z, z);
    Quad term = z;
    Quad sum = z;
    for (int n = 1; n < 600; ++n) {
        term = qscale(qmul(term, zz), static_cast<__float128>(-1.0) / n);
        const Quad add = qscale(term, static_cast<__float128>(1.0) / (2 * n + 1));
        sum = qadd(sum, add);
        if (qmag(add) < static_cast<__float128>(1e-35) * qmag(sum) && n > 8) break;
    }
    const double two_over_sqrt_pi = 1.1283791670955125739;
    return {two_over_sqrt_pi * static_cast<double>(sum.re),
            two_over_sqrt_pi * static_cast<double>(sum.im)};
}

// Bisection on a bracketed sign change.
template <typename F>
double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace testbed
