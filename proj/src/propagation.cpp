#include "mzrecoil/propagation.hpp"

#include <unsupported/Eigen/FFT>

#include <cstdio>
#include <string>

#include "mzrecoil/csv.hpp"

namespace mzr {

namespace {

// One FFT engine per thread: Eigen's FFT caches plans per size and is not
// safe to share across threads.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

// Raw DFT of the samples, no physical scaling.
ArrayXcd fft_raw(const ArrayXcd& in) {
    Eigen::VectorXcd out(in.size());
    Eigen::VectorXcd tmp = in.matrix();
    fft_engine().fwd(out, tmp);
    return out.array();
}

ArrayXcd ifft_raw(const ArrayXcd& in) {
    Eigen::VectorXcd out(in.size());
    Eigen::VectorXcd tmp = in.matrix();
    fft_engine().inv(out, tmp);
    return out.array();
}

constexpr cplx I_unit{0.0, 1.0};

} // namespace

double MomentumSpectrum::norm() const {
    return amplitudes.abs2().sum() * k_spacing();
}

cplx MomentumSpectrum::at(double k_value) const {
    const Index n = k.size();
    if (n < 4) return {0.0, 0.0};
    const double dk = k_spacing();
    const double t = (k_value - k[0]) / dk;
    if (t < 0.0 || t > static_cast<double>(n - 1)) return {0.0, 0.0};
    Index i1 = static_cast<Index>(std::floor(t));
    if (i1 < 1) i1 = 1;
    if (i1 > n - 3) i1 = n - 3;
    const double u = t - static_cast<double>(i1);
    // Catmull-Rom through the four neighbors.
    const cplx p0 = amplitudes[i1 - 1], p1 = amplitudes[i1], p2 = amplitudes[i1 + 1],
               p3 = amplitudes[i1 + 2];
    const cplx a = 2.0 * p1;
    const cplx b = p2 - p0;
    const cplx c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    const cplx d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    return 0.5 * (a + b * u + c * u * u + d * u * u * u);
}

double TransverseState::norm() const {
    return psi.abs2().sum() * grid.spacing;
}

double TransverseState::centroid() const {
    const ArrayXd I = psi.abs2();
    const double total = I.sum();
    if (total <= 0.0) throw numeric_error("centroid of a zero state");
    return (grid.x() * I).sum() / total;
}

TransverseState initial_state(const TransmissionProfile& profile, const ArrayXd& envelope) {
    if (envelope.size() != profile.samples.size())
        throw config_error("envelope", "grid mismatch with transmission profile");
    TransverseState s;
    s.grid = profile.grid;
    s.psi = (profile.samples * envelope).cast<cplx>();
    s.y = 0.0;
    return s;
}

MomentumSpectrum spectrum_of(const TransverseState& state) {
    const SpatialGrid& g = state.grid;
    ArrayXcd c = fft_raw(state.psi) * (g.spacing / std::sqrt(2.0 * pi));
    // The DFT references x to the first sample; restore the physical origin.
    const ArrayXd kf = g.k_fft();
    c *= (-I_unit * kf * g.origin).exp();
    // fftshift to a monotonic k grid.
    MomentumSpectrum spec;
    const Index n = g.size;
    const Index half = (n + 1) / 2;  // count of non-negative frequencies
    spec.amplitudes.resize(n);
    spec.k.resize(n);
    spec.amplitudes.head(n - half) = c.tail(n - half);
    spec.amplitudes.tail(half) = c.head(half);
    spec.k.head(n - half) = kf.tail(n - half);
    spec.k.tail(half) = kf.head(half);
    return spec;
}

MomentumSpectrum initial_spectrum(const TransmissionProfile& profile, const ArrayXd& envelope) {
    return spectrum_of(initial_state(profile, envelope));
}

TransverseState state_from_spectrum(const MomentumSpectrum& spec, const SpatialGrid& grid,
                                    double y) {
    if (spec.k.size() != grid.size)
        throw config_error("spectrum", "grid mismatch");
    // Undo the shift to FFT order, undo the origin phase, inverse transform.
    const Index n = grid.size;
    const Index half = (n + 1) / 2;
    ArrayXcd c(n);
    c.head(half) = spec.amplitudes.tail(half);
    c.tail(n - half) = spec.amplitudes.head(n - half);
    const ArrayXd kf = grid.k_fft();
    c *= (I_unit * kf * grid.origin).exp();
    TransverseState s;
    s.grid = grid;
    // Eigen's inv already divides by N; the physical inverse is sqrt(2 pi)/h
    // times that (h * dk * N = 2 pi).
    s.psi = ifft_raw(c) * (std::sqrt(2.0 * pi) / grid.spacing);
    s.y = y;
    return s;
}

TransverseState propagate_free(const TransverseState& state, double dy, const BeamSpec& beam) {
    if (dy < 0.0) throw contract_error("propagate_free: dy must be nonnegative");
    TransverseState out = state;
    if (dy == 0.0) return out;
    const ArrayXd kf = state.grid.k_fft();
    ArrayXcd c = fft_raw(state.psi);
    c *= (-I_unit * kf.square() * (dy / (2.0 * beam.wavenumber_k))).exp();
    out.psi = ifft_raw(c);
    out.y = state.y + dy;
    return out;
}

TransverseState apply_kick(const TransverseState& state, double delta_kx, const BeamSpec& beam,
                           const PhotonSpec& photon) {
    if (state.kick)
        throw contract_error("apply_kick: state already carries a scattering event");
    if (delta_kx < 0.0 || delta_kx > 2.0 * photon.wavenumber_i + 1e-9 * photon.wavenumber_i)
        throw contract_error("apply_kick: delta_kx outside [0, 2 k_i]");
    TransverseState out = state;
    if (delta_kx != 0.0)
        out.psi = state.psi * (I_unit * delta_kx * state.grid.x()).exp();
    KickRecord rec;
    rec.delta_kx = delta_kx;
    rec.y_prime_12 = state.y;
    rec.delta_x0 = (delta_kx / beam.wavenumber_k) * state.y;
    out.kick = rec;
    return out;
}

TransverseState apply_grating(const TransverseState& state, const TransmissionProfile& profile) {
    if (!state.grid.matches(profile.grid))
        throw config_error("grating", "grid mismatch with state");
    TransverseState out = state;
    out.psi = state.psi * profile.samples.cast<cplx>();
    return out;
}

TransverseState band_limit(const TransverseState& state, double k_cut) {
    if (!(k_cut > 0.0)) throw contract_error("band_limit: k_cut must be positive");
    TransverseState out = state;
    const ArrayXd kf = state.grid.k_fft();
    ArrayXcd c = fft_raw(state.psi);
    for (Index m = 0; m < c.size(); ++m)
        if (std::abs(kf[m]) > k_cut) c[m] = cplx{0.0, 0.0};
    out.psi = ifft_raw(c);
    return out;
}

double envelope_shift_at(const TransverseState& kicked, const TransverseState& unkicked) {
    if (!kicked.grid.matches(unkicked.grid))
        throw config_error("envelope_shift", "grid mismatch");
    if (std::abs(kicked.y - unkicked.y) > 1e-12)
        throw contract_error("envelope_shift_at: states at different y");
    if (kicked.kick && kicked.y < kicked.kick->y_prime_12)
        throw contract_error("envelope_shift_at: state precedes its kick plane");
    return kicked.centroid() - unkicked.centroid();
}

void write_intensity_csv(const TransverseState& state, const std::string& path) {
    CsvWriter csv({"x_m", "intensity"});
    const ArrayXd x = state.grid.x();
    const ArrayXd I = state.intensity();
    for (Index m = 0; m < state.grid.size; ++m) csv.row({x[m], I[m]});
    csv.save(path);
}

TransverseState far_field_form(const MomentumSpectrum& spectrum, const KickRecord& kick, double y,
                               const BeamSpec& beam, const SpatialGrid& grid,
                               double source_halfwidth) {
    if (y == 0.0) throw contract_error("far_field_form: y must be nonzero");
    const double fraunhofer = beam.wavenumber_k * source_halfwidth * source_halfwidth / y;
    if (fraunhofer > 0.1)
        std::fprintf(stderr, "far_field_form: Fraunhofer ratio k x'^2/y = %.3g exceeds 0.1\n",
                     fraunhofer);
    const double k = beam.wavenumber_k;
    const ArrayXd x = grid.x();
    TransverseState s;
    s.grid = grid;
    s.y = y;
    s.kick = kick;
    s.psi.resize(grid.size);
    const cplx root = std::sqrt(cplx(0.0, -k / y));  // sqrt(k/(i y)), principal branch
    const double phase_kick = -kick.delta_kx * kick.delta_kx * y / (2.0 * k);
    for (Index m = 0; m < grid.size; ++m) {
        const double xs = x[m] + kick.delta_x0;
        const double q = k * xs / y - kick.delta_kx;
        const cplx phase = std::exp(I_unit * (k * xs * xs / (2.0 * y) + phase_kick));
        s.psi[m] = root * phase * spectrum.at(q);
    }
    return s;
}

} // namespace mzr
