#pragma once
#include <complex>
#include <optional>

#include "mzrecoil/grid.hpp"
#include "mzrecoil/transmission.hpp"
#include "mzrecoil/types.hpp"

namespace mzr {

using cplx = std::complex<double>;

// Transverse wavefunction in momentum representation, on a monotonically
// ascending k grid. Normalization: c(k) = (1/sqrt(2 pi)) int psi(x) e^{-ikx} dx,
// so that int |c|^2 dk = int |psi|^2 dx.
struct MomentumSpectrum {
    ArrayXcd amplitudes;
    ArrayXd k;

    double k_spacing() const { return k.size() > 1 ? k[1] - k[0] : 0.0; }
    double norm() const;  // int |c|^2 dk
    // Cubic interpolation of the amplitude at arbitrary k (0 outside the grid).
    cplx at(double k_value) const;
};

// One photon-atom scattering event.
struct KickRecord {
    double delta_kx = 0.0;    // transferred transverse momentum, 1/m
    double y_prime_12 = 0.0;  // where it happened, m
    double delta_x0 = 0.0;    // (delta_kx / k) * y_prime_12, m
};

// Transverse wavefunction on the spatial grid at longitudinal position y.
struct TransverseState {
    ArrayXcd psi;
    SpatialGrid grid;
    double y = 0.0;
    std::optional<KickRecord> kick;

    double norm() const;                 // int |psi|^2 dx
    ArrayXd intensity() const { return psi.abs2(); }
    double centroid() const;             // first moment of |psi|^2
};

// State at y = 0+ behind G1: psi = T(x) * envelope(x).
TransverseState initial_state(const TransmissionProfile& profile, const ArrayXd& envelope);

// c(k_x) of T * envelope (grids must match).
MomentumSpectrum initial_spectrum(const TransmissionProfile& profile, const ArrayXd& envelope);

MomentumSpectrum spectrum_of(const TransverseState& state);
TransverseState state_from_spectrum(const MomentumSpectrum& spec, const SpatialGrid& grid, double y);

// Free paraxial evolution by dy: each spectral amplitude picks up
// e^{-i k_x^2 dy / (2k)}. dy < 0 is a contract violation.
TransverseState propagate_free(const TransverseState& state, double dy, const BeamSpec& beam);

// Sudden momentum shift delta_kx at the state's current y (= y'_12): psi *= e^{i delta_kx x}.
// |psi|^2 is unchanged at the kick plane. A second kick is a contract violation.
TransverseState apply_kick(const TransverseState& state, double delta_kx, const BeamSpec& beam,
                           const PhotonSpec& photon);

// Pointwise multiplication by a binary grating mask.
TransverseState apply_grating(const TransverseState& state, const TransmissionProfile& profile);

// Zero all spectral content with |k_x| > k_cut. Keeps the kicked translation
// identity exact on the grid (no spectral tail can alias through Nyquist).
TransverseState band_limit(const TransverseState& state, double k_cut);

// Centroid displacement of the kicked density relative to the unkicked one,
// both at the same y past the kick plane. Equals dw2 = (delta_kx/k)(y - y'_12).
double envelope_shift_at(const TransverseState& kicked, const TransverseState& unkicked);

// |psi(x)|^2 dumped as CSV (columns x_m,intensity) for carpet plotting.
void write_intensity_csv(const TransverseState& state, const std::string& path);

// Fraunhofer form psi(x) = sqrt(k/(i y)) e^{i k (x+dx0)^2/(2y) - i dkx^2 y/(2k)}
//                          * c(k (x+dx0)/y - dkx),
// evaluated on `grid`. Warns to stderr when k x'^2 / y > 0.1 (x' = half the
// spectrum's source width); y = 0 is a contract violation.
TransverseState far_field_form(const MomentumSpectrum& spectrum, const KickRecord& kick, double y,
                               const BeamSpec& beam, const SpatialGrid& grid,
                               double source_halfwidth);

} // namespace mzr
