#include "mzrecoil/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "mzrecoil/csv.hpp"
#include "mzrecoil/erf.hpp"
#include "mzrecoil/quadrature.hpp"

namespace mzr {

using cplx = std::complex<double>;

namespace {

constexpr cplx I_unit{0.0, 1.0};

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Truncation-exact normalization of the general Gaussian on [0, 2 k_i]:
// gamma_g = 2 / (sqrt(pi) N k_i [erf(phi+) + erf(phi-)]).
double gaussian_prefactor(double k_i, double N, double eta) {
    const double phip = (2.0 - eta) / N;
    const double phim = eta / N;
    return 2.0 / (std::sqrt(pi) * N * k_i * (std::erf(phip) + std::erf(phim)));
}

} // namespace

MomentumTransferDistribution MomentumTransferDistribution::mandel(double k_i) {
    MomentumTransferDistribution d;
    d.kind = DistKind::Mandel;
    d.k_i = k_i;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::general_gaussian(double k_i, double N,
                                                                            double eta) {
    MomentumTransferDistribution d;
    d.kind = DistKind::GeneralGaussian;
    d.k_i = k_i;
    d.width_n = N;
    d.eta = eta;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::half_gaussian(double k_i, double N) {
    auto d = general_gaussian(k_i, N, 0.0);
    d.kind = DistKind::HalfGaussian;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::mirrored_half_gaussian(double k_i,
                                                                                  double N) {
    auto d = general_gaussian(k_i, N, 2.0);
    d.kind = DistKind::MirroredHalfGaussian;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::displaced_gaussian(double k_i,
                                                                              double N) {
    auto d = general_gaussian(k_i, N, 1.5);
    d.kind = DistKind::DisplacedGaussian;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::exponential(double k_i, double epsilon) {
    MomentumTransferDistribution d;
    d.kind = DistKind::Exponential;
    d.k_i = k_i;
    d.epsilon = epsilon;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::uniform(double k_i, double k1,
                                                                   double k2) {
    MomentumTransferDistribution d;
    d.kind = DistKind::Uniform;
    d.k_i = k_i;
    d.k1 = k1;
    d.k2 = k2;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::delta(double k_i, double k_delta) {
    MomentumTransferDistribution d;
    d.kind = DistKind::Delta;
    d.k_i = k_i;
    d.k_delta = k_delta;
    return d;
}

MomentumTransferDistribution MomentumTransferDistribution::tabulated(double k_i,
                                                                     std::vector<double> k,
                                                                     std::vector<double> p) {
    MomentumTransferDistribution d;
    d.kind = DistKind::Tabulated;
    d.k_i = k_i;
    if (k.size() != p.size() || k.size() < 2)
        throw config_error("tabulated", "need two equal-length columns with >= 2 rows");
    for (std::size_t i = 1; i < k.size(); ++i)
        if (k[i] <= k[i - 1]) throw config_error("tabulated", "nodes must ascend");
    for (double v : p)
        if (v < 0.0) throw config_error("tabulated", "density must be nonnegative");
    // Renormalize on the native grid by the trapezoid rule.
    double mass = 0.0;
    for (std::size_t i = 1; i < k.size(); ++i)
        mass += 0.5 * (p[i] + p[i - 1]) * (k[i] - k[i - 1]);
    if (!(mass > 0.0)) throw config_error("tabulated", "zero total mass");
    for (double& v : p) v /= mass;
    d.tab_k = std::move(k);
    d.tab_p = std::move(p);
    return d;
}

void MomentumTransferDistribution::validate() const {
    if (!(k_i > 0.0)) throw config_error("k_i", "must be positive");
    switch (kind) {
        case DistKind::HalfGaussian:
        case DistKind::MirroredHalfGaussian:
        case DistKind::DisplacedGaussian:
        case DistKind::GeneralGaussian:
            if (!(width_n > 0.0)) throw config_error("N", "must be positive");
            if (eta < 0.0 || eta > 2.0) throw config_error("eta", "must lie in [0, 2]");
            break;
        case DistKind::Exponential:
            if (!(epsilon > 0.0)) throw config_error("epsilon", "must be positive");
            break;
        case DistKind::Uniform:
            if (!(k2 > k1) || k1 < 0.0 || k2 > 2.0 * k_i * (1 + 1e-12))
                throw config_error("k1_over_ki", "need 0 <= k1 < k2 <= 2 k_i");
            break;
        case DistKind::Delta:
            if (k_delta < 0.0 || k_delta > 2.0 * k_i)
                throw config_error("k_delta_over_ki", "must lie in [0, 2 k_i]");
            break;
        case DistKind::Tabulated:
            if (tab_k.empty()) throw config_error("tabulated", "no samples");
            if (tab_k.front() < -1e-12 || tab_k.back() > 2.0 * k_i * (1 + 1e-12))
                throw config_error("tabulated", "support must lie in [0, 2 k_i]");
            break;
        case DistKind::Mandel:
            break;
    }
}

std::pair<double, double> MomentumTransferDistribution::support() const {
    switch (kind) {
        case DistKind::Uniform: return {k1, k2};
        case DistKind::Delta: return {k_delta, k_delta};
        case DistKind::Tabulated: return {tab_k.front(), tab_k.back()};
        default: return {0.0, 2.0 * k_i};
    }
}

double MomentumTransferDistribution::pdf(double dk) const {
    if (dk < -1e-12 * k_i || dk > 2.0 * k_i * (1.0 + 1e-12))
        throw std::domain_error("pdf: delta_kx outside [0, 2 k_i]");
    switch (kind) {
        case DistKind::Mandel: {
            const double u = 1.0 - dk / k_i;
            return (3.0 / (8.0 * k_i)) * (1.0 + u * u);
        }
        case DistKind::HalfGaussian:
        case DistKind::MirroredHalfGaussian:
        case DistKind::DisplacedGaussian:
        case DistKind::GeneralGaussian: {
            const double s = (dk - eta * k_i) / (width_n * k_i);
            return gaussian_prefactor(k_i, width_n, eta) * std::exp(-s * s);
        }
        case DistKind::Exponential:
            return epsilon / (k_i * (1.0 - std::exp(-2.0 * epsilon))) *
                   std::exp(epsilon * (dk / k_i - 2.0));
        case DistKind::Uniform:
            return (dk >= k1 && dk <= k2) ? 1.0 / (k2 - k1) : 0.0;
        case DistKind::Delta:
            throw contract_error("pdf: the delta distribution has no pointwise density");
        case DistKind::Tabulated: {
            if (dk <= tab_k.front() || dk >= tab_k.back()) {
                if (dk == tab_k.front()) return tab_p.front();
                if (dk == tab_k.back()) return tab_p.back();
                return 0.0;
            }
            const auto it = std::upper_bound(tab_k.begin(), tab_k.end(), dk);
            const std::size_t i = static_cast<std::size_t>(it - tab_k.begin());
            const double t = (dk - tab_k[i - 1]) / (tab_k[i] - tab_k[i - 1]);
            return tab_p[i - 1] + t * (tab_p[i] - tab_p[i - 1]);
        }
    }
    return 0.0;
}

VisPhase analytic_visibility_phase(const MomentumTransferDistribution& dist, double d_p) {
    if (d_p < 0.0) throw contract_error("analytic_visibility_phase: d_p must be nonnegative");
    dist.validate();
    const double x = dist.k_i * d_p;  // k_i d_p
    VisPhase out;
    switch (dist.kind) {
        case DistKind::Mandel: {
            // The signed recoil form times e^{i ki dp} is exactly I. Report |V0|
            // with the continuous phase ki dp; sign flips live in `coherence`.
            double v;
            if (x < 0.01) {
                v = 1.0 - x * x / 5.0 + 3.0 * x * x * x * x / 280.0;  // small-x series
            } else {
                v = 1.5 / x * ((1.0 - 1.0 / (x * x)) * std::sin(x) + std::cos(x) / x);
            }
            out.coherence = v * std::exp(I_unit * x);
            out.phase_rad = x;
            out.visibility = std::abs(v);
            break;
        }
        case DistKind::HalfGaussian:
        case DistKind::MirroredHalfGaussian:
        case DistKind::DisplacedGaussian:
        case DistKind::GeneralGaussian: {
            const double N = dist.width_n, eta = dist.eta;
            const double alpha = N * x;
            const cplx up{(2.0 - eta) / N, -alpha / 2.0};
            const cplx um{eta / N, alpha / 2.0};
            const cplx num = complex_erf(up) + complex_erf(um);
            const double den = std::erf((2.0 - eta) / N) + std::erf(eta / N);
            const cplx ratio = num / den;
            out.coherence = std::exp(cplx(-alpha * alpha / 4.0, eta * x)) * ratio;
            out.visibility = std::abs(out.coherence);
            out.phase_rad = eta * x + std::arg(ratio);
            break;
        }
        case DistKind::Exponential: {
            const double e2 = std::exp(-2.0 * dist.epsilon);
            const cplx num = std::exp(cplx(0.0, 2.0 * x)) - e2;
            const cplx den{dist.epsilon, x};
            out.coherence = dist.epsilon / (1.0 - e2) * num / den;
            out.visibility = std::abs(out.coherence);
            out.phase_rad = std::arg(out.coherence);
            break;
        }
        case DistKind::Uniform: {
            const double half_diff = 0.5 * (dist.k2 - dist.k1) * d_p;
            const double half_sum = 0.5 * (dist.k2 + dist.k1) * d_p;
            const double v = sinc(half_diff);
            out.coherence = v * std::exp(I_unit * half_sum);
            out.visibility = std::abs(v);
            out.phase_rad = half_sum;
            break;
        }
        case DistKind::Delta: {
            out.coherence = std::exp(I_unit * dist.k_delta * d_p);
            out.visibility = 1.0;
            out.phase_rad = dist.k_delta * d_p;
            break;
        }
        case DistKind::Tabulated:
            throw contract_error("analytic_visibility_phase: tabulated has no closed form");
    }
    if (out.visibility > 1.0) {
        if (out.visibility > 1.0 + 1e-9)
            throw numeric_error("visibility exceeded 1 beyond tolerance");
        out.visibility = 1.0;
    }
    return out;
}

VisPhase numeric_visibility_phase(const MomentumTransferDistribution& dist, double d_p) {
    if (d_p < 0.0) throw contract_error("numeric_visibility_phase: d_p must be nonnegative");
    dist.validate();
    VisPhase out;
    cplx I{0.0, 0.0};
    if (dist.kind == DistKind::Delta) {
        I = std::exp(I_unit * dist.k_delta * d_p);  // no quadrature for a point mass
    } else if (dist.kind == DistKind::Tabulated) {
        // Trapezoid on the native grid, as stored (already renormalized).
        for (std::size_t i = 1; i < dist.tab_k.size(); ++i) {
            const double ka = dist.tab_k[i - 1], kb = dist.tab_k[i];
            const cplx fa = dist.tab_p[i - 1] * std::exp(I_unit * ka * d_p);
            const cplx fb = dist.tab_p[i] * std::exp(I_unit * kb * d_p);
            I += 0.5 * (fa + fb) * (kb - ka);
        }
    } else {
        const auto [lo, hi] = dist.support();
        // Pre-split into quarter-period panels so the oscillation cannot alias
        // the adaptive rule's first samples (at resonant d_p all coarse nodes
        // land on the same phase and the error estimate collapses to zero).
        const double phase_span = (hi - lo) * d_p;
        const int panels = std::max(1, static_cast<int>(std::ceil(phase_span / (pi / 2))));
        const double tol = 1e-9 / panels;
        for (int p = 0; p < panels; ++p) {
            // Endpoint panels use lo/hi exactly: drifting past the support edge
            // puts a spurious step into the integrand.
            const double a = (p == 0) ? lo : lo + (hi - lo) * p / panels;
            const double b = (p == panels - 1) ? hi : lo + (hi - lo) * (p + 1) / panels;
            I += adaptive_simpson(
                [&](double dk) { return dist.pdf(dk) * std::exp(I_unit * dk * d_p); }, a, b, tol);
        }
    }
    out.coherence = I;
    out.visibility = std::min(std::abs(I), 1.0 + 1e-9);
    if (out.visibility > 1.0) out.visibility = 1.0;
    out.phase_rad = std::arg(I);
    if (std::abs(I) < 1e-14) out.phase_defined = false;
    return out;
}

double wrap_angle(double a) {
    double w = std::remainder(a, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    return w;
}

ArrayXd unwrap_phases(const ArrayXd& wrapped) {
    ArrayXd out(wrapped.size());
    if (wrapped.size() == 0) return out;
    out[0] = wrapped[0];
    for (Index i = 1; i < wrapped.size(); ++i)
        out[i] = out[i - 1] + wrap_angle(wrapped[i] - wrapped[i - 1]);
    return out;
}

VisibilityCurve sweep_curve(const MomentumTransferDistribution& dist, const ArrayXd& dp_values,
                            SweepMode mode) {
    for (Index i = 1; i < dp_values.size(); ++i)
        if (dp_values[i] <= dp_values[i - 1])
            throw contract_error("sweep_curve: d_p grid must ascend");
    const double lambda_i = 2.0 * pi / dist.k_i;
    VisibilityCurve c;
    const Index n = dp_values.size();
    c.dp_over_lambda_i.resize(n);
    c.visibility.resize(n);
    c.phase_rad.resize(n);
    c.phase_unwrapped.resize(n);
    ArrayXd raw(n);
    for (Index i = 0; i < n; ++i) {
        const VisPhase vp = (mode == SweepMode::Analytic)
                                ? analytic_visibility_phase(dist, dp_values[i])
                                : numeric_visibility_phase(dist, dp_values[i]);
        c.dp_over_lambda_i[i] = dp_values[i] / lambda_i;
        c.visibility[i] = vp.visibility;
        raw[i] = vp.phase_rad;
        c.phase_rad[i] = wrap_angle(vp.phase_rad);
    }
    // The closed forms carry their linear terms explicitly but arg-based
    // pieces (exponential, Gaussian erf ratio) still wrap, so both modes
    // unwrap; for already-continuous inputs this is the identity.
    c.phase_unwrapped = unwrap_phases(mode == SweepMode::Analytic ? raw : c.phase_rad);
    return c;
}

MomentumTransferDistribution parse_distribution(const std::string& name, double k_i, double N,
                                                double eta, double epsilon, double k1_over_ki,
                                                double k2_over_ki, double k_delta_over_ki,
                                                const std::string& tabulated_path) {
    using D = MomentumTransferDistribution;
    if (name == "mandel") return D::mandel(k_i);
    if (name == "half-gaussian") return D::half_gaussian(k_i, N);
    if (name == "mirrored-half-gaussian") return D::mirrored_half_gaussian(k_i, N);
    if (name == "displaced-gaussian") return D::displaced_gaussian(k_i, N);
    if (name == "general-gaussian") return D::general_gaussian(k_i, N, eta);
    if (name == "exponential") return D::exponential(k_i, epsilon);
    if (name == "uniform") return D::uniform(k_i, k1_over_ki * k_i, k2_over_ki * k_i);
    if (name == "delta") return D::delta(k_i, k_delta_over_ki * k_i);
    if (name == "tabulated") {
        const CsvTable t = read_csv(tabulated_path);
        std::vector<double> k, p;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r].size() != 2)
                throw config_error("tabulated", "row " + std::to_string(r + 2) +
                                                    ": expected two columns");
            k.push_back(std::stod(t.rows[r][0]) * k_i);
            p.push_back(std::stod(t.rows[r][1]));
        }
        return D::tabulated(k_i, std::move(k), std::move(p));
    }
    throw config_error("variant", "unknown distribution '" + name + "'");
}

} // namespace mzr
