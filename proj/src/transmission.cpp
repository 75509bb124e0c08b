#include "mzrecoil/transmission.hpp"

#include <cmath>

namespace mzr {

double TransmissionProfile::open_fraction() const {
    return samples.size() > 0 ? samples.mean() : 0.0;
}

namespace {

// Slit centers symmetric about x = 0: (j + 1/2) d_g for even n, j d_g for odd.
// The lattice extends to any integer j for gratings wider than the beam.
double slit_center(const GratingSpec& g, int j) {
    const int n = g.illuminated_slits_n;
    const double off = (n % 2 == 0) ? (static_cast<double>(j) - n / 2 + 0.5)
                                    : static_cast<double>(j - (n - 1) / 2);
    return off * g.period_dg;
}

// Cells whose centers lie in [center - width/2, center + width/2). On the
// mid-cell-aligned grid the edges fall between samples, so the rasterized box
// is exactly centered and every slit spans the same cell count.
void paint_slit(ArrayXd& samples, const SpatialGrid& grid, double center, double width) {
    const Index lo =
        static_cast<Index>(std::ceil((center - width / 2 - grid.origin) / grid.spacing));
    const Index hi =
        static_cast<Index>(std::ceil((center + width / 2 - grid.origin) / grid.spacing));
    for (Index m = std::max<Index>(lo, 0); m < std::min(hi, samples.size()); ++m) samples[m] = 1.0;
}

} // namespace

TransmissionProfile build_transmission(const GratingSpec& grating, const GridRequest& grid) {
    grating.validate();
    if (!(grid.spacing > 0.0)) throw config_error("grid_spacing", "must be positive");
    const double span = grating.illuminated_slits_n * grating.period_dg;
    if (grid.extent < span - 1e-12 * span)
        throw config_error("grid_extent", "smaller than the illuminated span n*d_g");

    TransmissionProfile p;
    p.grid = SpatialGrid::centered(grid.spacing, grid.extent);
    p.samples = ArrayXd::Zero(p.grid.size);
    for (int j = 0; j < grating.illuminated_slits_n; ++j)
        paint_slit(p.samples, p.grid, slit_center(grating, j), grating.open_width_delta);
    return p;
}

TransmissionProfile periodic_comb(const GratingSpec& grating, const SpatialGrid& grid,
                                  Index shift_cells) {
    grating.validate();
    TransmissionProfile p;
    p.grid = grid;
    p.samples = ArrayXd::Zero(grid.size);

    const Index cells_per_period = static_cast<Index>(std::llround(grating.period_dg / grid.spacing));
    const bool tiles = cells_per_period > 0 &&
                       std::abs(cells_per_period * grid.spacing - grating.period_dg) <
                           1e-9 * grating.period_dg &&
                       grid.size % cells_per_period == 0;
    if (tiles) {
        // Rasterize one reference slit and tile it, so the comb is exactly
        // extent-periodic (no ragged boundary cells).
        ArrayXd period = ArrayXd::Zero(cells_per_period);
        const Index open = static_cast<Index>(std::llround(grating.open_width_delta / grid.spacing));
        const double c0 = slit_center(grating, 0);
        const Index lo = static_cast<Index>(
            std::ceil((c0 - grating.open_width_delta / 2 - grid.origin) / grid.spacing));
        for (Index m = 0; m < open; ++m)
            period[((lo + m) % cells_per_period + cells_per_period) % cells_per_period] = 1.0;
        for (Index m = 0; m < grid.size; ++m) p.samples[m] = period[m % cells_per_period];
    } else {
        const int jspan = static_cast<int>(std::ceil(grid.extent() / grating.period_dg)) +
                          grating.illuminated_slits_n + 2;
        for (int j = -jspan; j <= jspan; ++j) {
            const double c = slit_center(grating, j);
            if (c < grid.origin - grating.period_dg ||
                c > grid.origin + grid.extent() + grating.period_dg)
                continue;
            paint_slit(p.samples, p.grid, c, grating.open_width_delta);
        }
    }

    if (shift_cells != 0) {
        const Index n_cells = grid.size;
        const Index s = ((shift_cells % n_cells) + n_cells) % n_cells;
        ArrayXd rolled(n_cells);
        rolled.tail(n_cells - s) = p.samples.head(n_cells - s);
        rolled.head(s) = p.samples.tail(s);
        p.samples.swap(rolled);
    }
    return p;
}

ArrayXd incident_envelope(const GratingSpec& grating, const SpatialGrid& grid, EnvelopeKind kind) {
    const double half = grating.illuminated_slits_n * grating.period_dg / 2;
    const ArrayXd x = grid.x();
    if (kind == EnvelopeKind::TopHat)
        return (x.abs() <= half).cast<double>();
    // Raised-cosine edges over one grating period beyond the span.
    const double ramp = grating.period_dg;
    ArrayXd env(grid.size);
    for (Index m = 0; m < grid.size; ++m) {
        const double t = (half + ramp - std::abs(x[m])) / ramp;
        if (t <= 0.0) env[m] = 0.0;
        else if (t >= 1.0) env[m] = 1.0;
        else env[m] = 0.5 - 0.5 * std::cos(pi * t);
    }
    return env;
}

} // namespace mzr
