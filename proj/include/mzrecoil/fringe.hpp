#pragma once
#include <optional>

#include "mzrecoil/distributions.hpp"
#include "mzrecoil/propagation.hpp"

namespace mzr {

// Detection window at the G3 plane. Unset halfwidth means the full grid.
struct FluxWindow {
    double center = 0.0;
    std::optional<double> halfwidth;
};

struct FluxScan {
    ArrayXd dx3;   // G3 offsets, m
    ArrayXd flux;  // transmitted probability per offset
};

// Fitted fringe T(dx3) = a + b cos(2 pi dx3 / d_g + phase).
struct FringeResult {
    double offset_a = 0.0;
    double amplitude_b = 0.0;
    double phase_rad = 0.0;
    double residual_rms = 0.0;
    double visibility = 0.0;         // |I| once an ensemble weighting is applied
    double relative_contrast = 0.0;  // C/C0; equals visibility by construction
    bool phase_defined = true;

    double contrast() const { return offset_a != 0.0 ? std::abs(amplitude_b) / offset_a : 0.0; }
};

// Probability transmitted through the G3 comb displaced by dx3, restricted to
// the window: int |psi|^2 T3(x + dx3) W(x) dx. The comb shift is rasterized to
// whole grid cells (exact when dx3 is a cell multiple).
double transmitted_flux(const TransverseState& state, const TransmissionProfile& g3_comb,
                        const FluxWindow& window, double dx3);

// Flux sampled over `periods` grating periods of length `period_dg`. Offsets
// snap to whole cells; points_per_period >= 16 and periods >= 2 enforced
// (fit_fringe contract).
FluxScan scan_flux(const TransverseState& state, const TransmissionProfile& g3_comb,
                   const FluxWindow& window, double period_dg, int periods = 2,
                   int points_per_period = 16);

// a from the mean, (b, phase) from the complex projection at 2 pi / period,
// rms residual of the pure-cosine model. Zero mean flux is a degenerate scan.
FringeResult fit_fringe(const FluxScan& scan, double period);

// Ensemble average over the momentum-transfer distribution:
// I = int P(dk) e^{i dk d_p} d(dk); V = |I|, phase = arg I, combined with the
// single-event fringe (a, b). Unnormalized distributions are contract errors.
FringeResult ensemble_fringe(double offset_a, double amplitude_b,
                             const MomentumTransferDistribution& dist, double d_p);

} // namespace mzr
