#pragma once
#include <Eigen/Dense>
#include <cmath>

#include "mzrecoil/errors.hpp"
#include "mzrecoil/types.hpp"

namespace mzr {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;

// Uniform spatial grid x_m = origin + m*spacing, m = 0..size-1.
// Conjugate k-grid follows FFT ordering; dk = 2 pi / (size*spacing).
struct SpatialGrid {
    double spacing = 0.0;
    Index size = 0;
    double origin = 0.0;

    // Grid symmetric about x = 0. Samples sit at cell centers, so for even
    // size x = 0 falls between the two middle cells; structures whose edges
    // are cell multiples then rasterize without any half-cell bias.
    static SpatialGrid centered(double spacing, double extent) {
        if (!(spacing > 0.0)) throw config_error("grid_spacing", "must be positive");
        if (!(extent > 0.0)) throw config_error("grid_extent", "must be positive");
        SpatialGrid g;
        g.spacing = spacing;
        g.size = static_cast<Index>(std::llround(extent / spacing));
        if (g.size < 2) throw config_error("grid_extent", "fewer than two cells");
        g.origin = -0.5 * static_cast<double>(g.size - 1) * spacing;
        return g;
    }

    double extent() const { return spacing * static_cast<double>(size); }
    double dk() const { return 2.0 * pi / extent(); }
    double nyquist() const { return pi / spacing; }

    ArrayXd x() const {
        return origin + spacing * ArrayXd::LinSpaced(size, 0.0, static_cast<double>(size - 1));
    }

    // FFT-ordered k values: 0..N/2-1 positive, then negative.
    ArrayXd k_fft() const {
        ArrayXd k(size);
        const double step = dk();
        for (Index m = 0; m < size; ++m) {
            const Index j = (m <= (size - 1) / 2) ? m : m - size;
            k[m] = step * static_cast<double>(j);
        }
        return k;
    }

    Index index_near(double xv) const {
        Index m = static_cast<Index>(std::llround((xv - origin) / spacing));
        if (m < 0) m = 0;
        if (m >= size) m = size - 1;
        return m;
    }

    bool matches(const SpatialGrid& o) const {
        return size == o.size && std::abs(spacing - o.spacing) <= 1e-15 * spacing &&
               std::abs(origin - o.origin) <= 1e-9 * spacing;
    }
};

} // namespace mzr
