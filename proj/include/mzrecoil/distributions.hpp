#pragma once
#include <complex>
#include <string>
#include <vector>

#include "mzrecoil/grid.hpp"
#include "mzrecoil/types.hpp"

namespace mzr {

enum class DistKind {
    Mandel,                // P0: (3/8ki)[1 + (1 - dk/ki)^2]
    HalfGaussian,          // P_I: Gaussian centered at 0, truncated to [0, 2ki]
    MirroredHalfGaussian,  // P'_I: mirror of P_I about ki (center 2ki)
    DisplacedGaussian,     // P_II: center 3ki/2
    GeneralGaussian,       // P_g: center eta*ki, any eta in [0, 2]
    Exponential,           // P_III: rising exponential, rate epsilon
    Uniform,               // P_u on [k1, k2]
    Delta,                 // P_delta at k_delta
    Tabulated,             // user-supplied samples, renormalized
};

// Momentum transfer distribution P(dk_x), normalized on [0, 2 k_i].
// All Gaussian variants share the general form P_g = gamma_g e^{-((dk-eta ki)/(N ki))^2}
// with the truncation-exact normalization.
struct MomentumTransferDistribution {
    DistKind kind = DistKind::Mandel;
    double k_i = 0.0;
    double width_n = 0.7;   // Gaussian width parameter N
    double eta = 0.0;       // Gaussian center / k_i
    double epsilon = 1.0;   // exponential rate
    double k1 = 0.0, k2 = 0.0;
    double k_delta = 0.0;
    std::vector<double> tab_k, tab_p;  // tabulated nodes (1/m) and renormalized density

    static MomentumTransferDistribution mandel(double k_i);
    static MomentumTransferDistribution half_gaussian(double k_i, double N = 0.7);
    static MomentumTransferDistribution mirrored_half_gaussian(double k_i, double N = 0.7);
    static MomentumTransferDistribution displaced_gaussian(double k_i, double N = 0.7);
    static MomentumTransferDistribution general_gaussian(double k_i, double N, double eta);
    static MomentumTransferDistribution exponential(double k_i, double epsilon = 1.0);
    static MomentumTransferDistribution uniform(double k_i, double k1, double k2);
    static MomentumTransferDistribution delta(double k_i, double k_delta);
    // Two columns: dk_x/k_i, unnormalized density. Renormalized by trapezoid rule.
    static MomentumTransferDistribution tabulated(double k_i, std::vector<double> k,
                                                  std::vector<double> p);

    // Normalized density at delta_kx; domain error outside [0, 2 k_i].
    double pdf(double delta_kx) const;
    // Support within [0, 2 k_i] (integration limits for the numeric path).
    std::pair<double, double> support() const;
    bool has_closed_form() const { return kind != DistKind::Tabulated; }
    void validate() const;
};

MomentumTransferDistribution parse_distribution(const std::string& name, double k_i,
                                                double N, double eta, double epsilon,
                                                double k1_over_ki, double k2_over_ki,
                                                double k_delta_over_ki,
                                                const std::string& tabulated_path);

// Visibility V = |I| and phase of I = int P e^{i dk d_p} d(dk).
// `phase_rad` follows the closed forms' continuous branches on the analytic path
// (it can exceed pi and does not jump where the signed amplitude flips);
// `coherence` is the full complex I, whose arg carries those pi flips.
struct VisPhase {
    double visibility = 0.0;
    double phase_rad = 0.0;
    std::complex<double> coherence{0.0, 0.0};
    bool phase_defined = true;
};

// Closed forms (truncated Gaussians via complex erf, Mandel, uniform,
// exponential, delta).
// Tabulated has no closed form: contract violation.
VisPhase analytic_visibility_phase(const MomentumTransferDistribution& dist, double d_p);

// Adaptive quadrature of P e^{i dk d_p} over the support; Delta is evaluated
// symbolically, Tabulated by trapezoid on its native grid.
VisPhase numeric_visibility_phase(const MomentumTransferDistribution& dist, double d_p);

enum class SweepMode { Analytic, Numeric };

struct VisibilityCurve {
    ArrayXd dp_over_lambda_i;
    ArrayXd visibility;
    ArrayXd phase_rad;        // wrapped to (-pi, pi]
    ArrayXd phase_unwrapped;  // nearest-branch continuation along the sweep
};

// Per-point evaluation over an ascending d_p grid (meters) plus unwrapping.
VisibilityCurve sweep_curve(const MomentumTransferDistribution& dist, const ArrayXd& dp_values,
                            SweepMode mode);

double wrap_angle(double a);                       // to (-pi, pi]
ArrayXd unwrap_phases(const ArrayXd& wrapped);     // cumulative 2 pi corrections

} // namespace mzr
