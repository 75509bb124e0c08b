#include "mzrecoil/fringe.hpp"

#include <cmath>
#include <limits>

#include "mzrecoil/quadrature.hpp"

namespace mzr {

namespace {

constexpr cplx I_unit{0.0, 1.0};

// Window mask on the state's grid; empty halfwidth selects everything.
ArrayXd window_mask(const FluxWindow& w, const SpatialGrid& grid) {
    if (!w.halfwidth) return ArrayXd::Ones(grid.size);
    if (*w.halfwidth <= 0.0) throw config_error("window_halfwidth", "must be positive");
    if (w.center - *w.halfwidth < grid.origin - grid.spacing ||
        w.center + *w.halfwidth > grid.origin + grid.extent() + grid.spacing)
        throw config_error("window", "window extends outside the grid");
    const ArrayXd x = grid.x();
    return ((x - w.center).abs() <= *w.halfwidth).cast<double>();
}

double masked_flux_at_cells(const ArrayXd& I, const ArrayXd& mask, const ArrayXd& comb,
                            Index cells, double spacing) {
    const Index n = I.size();
    Index c = cells % n;
    if (c < 0) c += n;
    double acc = 0.0;
    for (Index m = 0; m < n; ++m) acc += I[m] * comb[(m + c) % n] * mask[m];
    return acc * spacing;
}

// True when the comb repeats exactly every p cells across the whole grid.
bool comb_periodic(const ArrayXd& comb, Index p) {
    const Index n = comb.size();
    if (p <= 0 || n % p != 0) return false;
    for (Index m = 0; m + p < n; ++m)
        if (comb[m] != comb[m + p]) return false;
    return true;
}

} // namespace

double transmitted_flux(const TransverseState& state, const TransmissionProfile& g3_comb,
                        const FluxWindow& window, double dx3) {
    if (!state.grid.matches(g3_comb.grid))
        throw config_error("g3", "comb grid mismatch with state");
    const ArrayXd mask = window_mask(window, state.grid);
    // T3 displaced by +dx3 samples the comb at x + dx3; rasterized as the
    // rounded cell count (exact whenever dx3 is a cell multiple).
    const Index cells = static_cast<Index>(std::llround(dx3 / state.grid.spacing));
    return masked_flux_at_cells(state.intensity(), mask, g3_comb.samples, cells,
                                state.grid.spacing);
}

FluxScan scan_flux(const TransverseState& state, const TransmissionProfile& g3_comb,
                   const FluxWindow& window, double period_dg, int periods,
                   int points_per_period) {
    if (periods < 2) throw contract_error("scan_flux: need at least two periods");
    if (points_per_period < 16) throw contract_error("scan_flux: need >= 16 points per period");
    if (!state.grid.matches(g3_comb.grid))
        throw config_error("g3", "comb grid mismatch with state");

    const double spacing = state.grid.spacing;
    const int npts = periods * points_per_period;
    const double step = period_dg / points_per_period;

    const ArrayXd mask = window_mask(window, state.grid);
    const ArrayXd I = state.intensity();

    FluxScan scan;
    scan.dx3.resize(npts);
    scan.flux.resize(npts);

    // Fast path: comb exactly periodic in cells and every offset a whole cell.
    // Then flux(c) = sum_q S[q] comb[(q + c) mod P] with one pass for S.
    const Index pcells = static_cast<Index>(std::llround(period_dg / spacing));
    const bool exact_cells =
        std::abs(pcells * spacing - period_dg) < 1e-9 * period_dg &&
        pcells % points_per_period == 0 && comb_periodic(g3_comb.samples, pcells);
    if (exact_cells) {
        ArrayXd S = ArrayXd::Zero(pcells);
        const Index n = state.grid.size;
        for (Index m = 0; m < n; ++m) S[m % pcells] += I[m] * mask[m];
        const Index cell_step = pcells / points_per_period;
        for (int j = 0; j < npts; ++j) {
            const Index c = (j * cell_step) % pcells;
            double acc = 0.0;
            for (Index q = 0; q < pcells; ++q) acc += S[q] * g3_comb.samples[(q + c) % pcells];
            scan.dx3[j] = static_cast<double>(j * cell_step) * spacing;
            scan.flux[j] = acc * spacing;
        }
        return scan;
    }

    for (int j = 0; j < npts; ++j) {
        const double dx3 = j * step;
        const Index cells = static_cast<Index>(std::llround(dx3 / spacing));
        scan.dx3[j] = dx3;
        scan.flux[j] = masked_flux_at_cells(I, mask, g3_comb.samples, cells, spacing);
    }
    return scan;
}

FringeResult fit_fringe(const FluxScan& scan, double period) {
    const Index n = scan.flux.size();
    if (n < 4 || scan.dx3.size() != n) throw contract_error("fit_fringe: malformed scan");
    if (!(period > 0.0)) throw contract_error("fit_fringe: period must be positive");
    // The scan must cover an integer number (>= 2) of periods, uniformly,
    // endpoint excluded; otherwise the projection is not orthogonal.
    const double stepd = scan.dx3[1] - scan.dx3[0];
    const double span = stepd * static_cast<double>(n);
    const double periods = span / period;
    if (std::abs(periods - std::round(periods)) > 1e-6 || periods < 2 - 1e-9)
        throw contract_error("fit_fringe: scan must span an integer number (>= 2) of periods");

    FringeResult r;
    r.offset_a = scan.flux.mean();
    if (r.offset_a <= 0.0) throw numeric_error("fit_fringe: degenerate scan with zero mean flux");

    cplx z{0.0, 0.0};
    for (Index j = 0; j < n; ++j)
        z += scan.flux[j] * std::exp(-I_unit * (2.0 * pi * scan.dx3[j] / period));
    z *= 2.0 / static_cast<double>(n);
    r.amplitude_b = std::abs(z);
    if (r.amplitude_b < 1e-12 * r.offset_a) {
        r.phase_defined = false;
        r.phase_rad = std::numeric_limits<double>::quiet_NaN();
    } else {
        r.phase_rad = std::arg(z);
    }

    double ss = 0.0;
    for (Index j = 0; j < n; ++j) {
        const double model =
            r.offset_a + (r.phase_defined
                              ? r.amplitude_b * std::cos(2.0 * pi * scan.dx3[j] / period + r.phase_rad)
                              : 0.0);
        const double d = scan.flux[j] - model;
        ss += d * d;
    }
    r.residual_rms = std::sqrt(ss / static_cast<double>(n));
    r.visibility = r.contrast();        // before ensemble weighting: single-event contrast
    r.relative_contrast = r.visibility; // callers rescale by the laser-off baseline
    return r;
}

FringeResult ensemble_fringe(double offset_a, double amplitude_b,
                             const MomentumTransferDistribution& dist, double d_p) {
    dist.validate();
    // Contract: the distribution must carry unit mass on [0, 2 k_i].
    if (dist.kind != DistKind::Delta) {
        const auto [lo, hi] = dist.support();
        const double mass = (dist.kind == DistKind::Tabulated)
                                ? [&] {
                                      double m = 0.0;
                                      for (std::size_t i = 1; i < dist.tab_k.size(); ++i)
                                          m += 0.5 * (dist.tab_p[i] + dist.tab_p[i - 1]) *
                                               (dist.tab_k[i] - dist.tab_k[i - 1]);
                                      return m;
                                  }()
                                : adaptive_simpson_real([&](double dk) { return dist.pdf(dk); },
                                                        lo, hi, 1e-10);
        if (std::abs(mass - 1.0) > 1e-6)
            throw contract_error("ensemble_fringe: distribution mass differs from 1 by " +
                                 std::to_string(std::abs(mass - 1.0)));
    }
    const VisPhase vp = numeric_visibility_phase(dist, d_p);
    FringeResult r;
    r.offset_a = offset_a;
    r.amplitude_b = amplitude_b * vp.visibility;
    r.phase_rad = vp.phase_rad;
    r.phase_defined = vp.phase_defined;
    r.residual_rms = 0.0;
    r.visibility = vp.visibility;
    r.relative_contrast = vp.visibility;
    return r;
}

} // namespace mzr
