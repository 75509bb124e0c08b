#pragma once
#include "mzrecoil/grid.hpp"
#include "mzrecoil/types.hpp"

namespace mzr {

// Binary grating mask sampled on a spatial grid. Samples are exactly 0 or 1.
struct TransmissionProfile {
    ArrayXd samples;
    SpatialGrid grid;

    double open_fraction() const;  // mean over the grid
};

struct GridRequest {
    double spacing = 0.0;  // m
    double extent = 0.0;   // m
};

enum class EnvelopeKind { TopHat, RaisedCosine };

// Ronchi profile of n slits of width delta, period d_g, symmetric about x = 0.
// Slit centers sit at (j + 1/2) d_g for even n and j d_g for odd n. Slit edges are
// rasterized through rounded cell indices so every slit spans the same cell count.
TransmissionProfile build_transmission(const GratingSpec& grating, const GridRequest& grid);

// Same comb continued across the entire grid (a grating much wider than the beam,
// e.g. G2/G3). shift_cells rolls the pattern cyclically.
TransmissionProfile periodic_comb(const GratingSpec& grating, const SpatialGrid& grid,
                                  Index shift_cells = 0);

// Incident transverse envelope over the illuminated span n*d_g. The raised-cosine
// variant ramps over one grating period at each edge.
ArrayXd incident_envelope(const GratingSpec& grating, const SpatialGrid& grid, EnvelopeKind kind);

} // namespace mzr
