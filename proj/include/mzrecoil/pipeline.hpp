#pragma once
#include "mzrecoil/fringe.hpp"

namespace mzr {

// Everything needed to run the three-grating interferometer end to end.
struct PipelineSettings {
    BeamSpec beam;
    PhotonSpec photon;
    GratingSpec grating;
    Geometry geometry;            // y_prime_12 here is a default; ops take y' explicitly
    GridRequest grid;
    EnvelopeKind envelope = EnvelopeKind::TopHat;
    // Spectral cutoff for the initial state: < 0 selects nyquist - 2.5 k_i,
    // 0 disables, > 0 is used as given.
    double band_limit_kx = -1.0;
    FluxWindow window;            // default: full grid
    int scan_periods = 2;
    int scan_points_per_period = 16;
    int kick_nodes = 129;         // Simpson nodes on [0, 2 k_i] for ensemble runs

    void validate() const;
    double resolved_band_limit() const;
};

// Immutable after construction; all methods are const and thread-safe.
class Interferometer {
public:
    explicit Interferometer(PipelineSettings settings);

    const PipelineSettings& settings() const { return settings_; }
    const TransverseState& source() const { return source_; }
    const TransmissionProfile& g3_comb() const { return comb_; }

    // Wave just before G2 (kick applied at y' when delta_kx != 0).
    TransverseState state_before_g2(double delta_kx, double y_prime) const;
    // Wave at the G3 plane, through G2.
    TransverseState state_at_g3(double delta_kx, double y_prime) const;

    FluxScan scan_at_g3(const TransverseState& at_g3) const;
    FringeResult fringe_for(double delta_kx, double y_prime) const;
    const FringeResult& laser_off() const { return laser_off_; }

    struct EnsemblePoint {
        double visibility = 0.0;      // C/C0
        double phase_rad = 0.0;       // fitted, wrapped
        double residual_rms = 0.0;    // of the averaged scan's cosine fit
        double offset_a = 0.0;
        double amplitude_b = 0.0;
    };
    // Full numeric pipeline at one laser position: kicked scans over the
    // Simpson node set, weighted by the distribution, averaged, fitted.
    EnsemblePoint ensemble_at(const MomentumTransferDistribution& dist, double y_prime) const;

    // |psi(x, y)|^2 between G1 and G2 (laser off), for carpet dumps.
    ArrayXd intensity_slice(double y) const;

private:
    PipelineSettings settings_;
    TransverseState source_;
    TransmissionProfile comb_;
    FringeResult laser_off_;
};

} // namespace mzr
