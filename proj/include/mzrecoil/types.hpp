#pragma once
#include <cmath>
#include <numbers>

#include "mzrecoil/errors.hpp"

namespace mzr {

inline constexpr double pi = std::numbers::pi;

// Monochromatic atomic beam. All quantities SI.
struct BeamSpec {
    double speed = 0.0;                  // m/s
    double wavenumber_k = 0.0;           // 1/m
    double de_broglie_wavelength = 0.0;  // m

    static BeamSpec from_wavenumber(double speed, double k) {
        BeamSpec b;
        b.speed = speed;
        b.wavenumber_k = k;
        b.de_broglie_wavelength = 2.0 * pi / k;
        return b;
    }
    void validate() const {
        if (!(speed > 0.0)) throw config_error("speed", "must be positive");
        if (!(wavenumber_k > 0.0)) throw config_error("wavenumber_k", "must be positive");
        const double rel = std::abs(wavenumber_k * de_broglie_wavelength - 2.0 * pi) / (2.0 * pi);
        if (rel > 1e-12) throw config_error("de_broglie_wavelength", "inconsistent with wavenumber_k");
    }
};

// Scattering photon.
struct PhotonSpec {
    double wavelength_i = 0.0;   // m
    double wavenumber_i = 0.0;   // 1/m

    static PhotonSpec from_wavelength(double lambda_i) {
        PhotonSpec p;
        p.wavelength_i = lambda_i;
        p.wavenumber_i = 2.0 * pi / lambda_i;
        return p;
    }
    static PhotonSpec from_wavenumber(double k_i) {
        PhotonSpec p;
        p.wavenumber_i = k_i;
        p.wavelength_i = 2.0 * pi / k_i;
        return p;
    }
    void validate() const {
        if (!(wavelength_i > 0.0)) throw config_error("lambda_i", "must be positive");
        const double rel = std::abs(wavenumber_i * wavelength_i - 2.0 * pi) / (2.0 * pi);
        if (rel > 1e-12) throw config_error("lambda_i", "wavenumber/wavelength mismatch");
    }
};

// Ronchi grating: binary amplitude mask, open width delta per period d_g.
struct GratingSpec {
    double period_dg = 0.0;        // m
    double open_width_delta = 0.0; // m
    int illuminated_slits_n = 0;

    void validate() const {
        if (!(period_dg > 0.0)) throw config_error("d_g", "must be positive");
        if (!(open_width_delta > 0.0) || open_width_delta > period_dg)
            throw config_error("delta", "need 0 < delta <= d_g");
        if (illuminated_slits_n < 1) throw config_error("n_slits", "need at least one slit");
    }
    double duty() const { return open_width_delta / period_dg; }
};

// Interferometer distances. The laser crosses the beam at y_prime_12 behind G1.
struct Geometry {
    double y12 = 0.0;         // G1 -> G2, m
    double y23 = 0.0;         // G2 -> G3, m
    double y_prime_12 = 0.0;  // G1 -> laser, m

    void validate() const {
        if (!(y12 > 0.0)) throw config_error("y12", "must be positive");
        if (!(y23 > 0.0)) throw config_error("y23", "must be positive");
        if (y_prime_12 < 0.0 || y_prime_12 > y12)
            throw config_error("y_prime_12", "must lie in [0, y12]");
    }
};

struct DerivedScales {
    double d_p = 0.0;               // path-separation scale at the scattering point, m
    double talbot_length = 0.0;     // L_T = 2 d_g^2 / lambda, m
    double dp_over_lambda_i = 0.0;  // the natural abscissa for contrast curves
};

// d_p = (2 pi / (k d_g)) y'_12.
inline double path_separation(const BeamSpec& beam, const GratingSpec& grating, double y_prime_12) {
    return (2.0 * pi / (beam.wavenumber_k * grating.period_dg)) * y_prime_12;
}

inline double talbot_length(const BeamSpec& beam, const GratingSpec& grating) {
    return 2.0 * grating.period_dg * grating.period_dg / beam.de_broglie_wavelength;
}

inline DerivedScales derived_quantities(const BeamSpec& beam, const PhotonSpec& photon,
                                        const GratingSpec& grating, const Geometry& geom) {
    beam.validate();
    photon.validate();
    grating.validate();
    geom.validate();
    DerivedScales d;
    d.d_p = path_separation(beam, grating, geom.y_prime_12);
    d.talbot_length = talbot_length(beam, grating);
    d.dp_over_lambda_i = d.d_p / photon.wavelength_i;
    return d;
}

// Inverse of path_separation: laser position giving a requested d_p.
inline double y_prime_for_dp(const BeamSpec& beam, const GratingSpec& grating, double d_p) {
    return d_p * beam.wavenumber_k * grating.period_dg / (2.0 * pi);
}

} // namespace mzr
