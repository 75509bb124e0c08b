#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "mzrecoil/csv.hpp"
#include "mzrecoil/propagation.hpp"
#include "support.hpp"

using namespace mzr;

namespace {

// Small fast grid for transform-level checks.
TransverseState small_state() {
    const GridRequest gr{testbed::kOpenWidth / 16.0, 4096 * testbed::kOpenWidth / 16.0};
    const auto prof = build_transmission(testbed::grating(), gr);
    const ArrayXd env = incident_envelope(testbed::grating(), prof.grid, EnvelopeKind::TopHat);
    return initial_state(prof, env);
}

} // namespace

TEST_CASE("transform round trip and Parseval") {
    const TransverseState s = small_state();
    const MomentumSpectrum c = spectrum_of(s);
    CHECK(std::abs(c.norm() - s.norm()) / s.norm() < 1e-9);

    const TransverseState back = state_from_spectrum(c, s.grid, s.y);
    double worst = 0;
    for (Index m = 0; m < s.grid.size; ++m)
        worst = std::max(worst, std::abs(back.psi[m] - s.psi[m]));
    CHECK(worst < 1e-10);
}

TEST_CASE("Ronchi spectrum: order peaks, even-order suppression, slit-sum oracle") {
    const TransverseState s = small_state();
    const MomentumSpectrum c = spectrum_of(s);
    const double order = 2 * pi / testbed::kPeriod;

    auto mag2_at = [&](double k) { return std::norm(c.at(k)); };
    // odd orders strong, even orders suppressed at 50% duty
    const double m0 = mag2_at(0.0), m1 = mag2_at(order), m2 = mag2_at(2 * order);
    CHECK(m1 > 1e-2 * m0);
    CHECK(m2 < 1e-4 * m1);

    // direct slit-sum oracle: c(k) = (delta/sqrt(2 pi)) sinc(k delta/2) sum_j e^{-ik c_j}
    auto oracle = [&](double k) {
        const double d = testbed::kOpenWidth;
        std::complex<double> sum{0, 0};
        for (int j = 0; j < testbed::kSlits; ++j) {
            const double cj = (j - testbed::kSlits / 2 + 0.5) * testbed::kPeriod;
            sum += std::exp(std::complex<double>(0, -k * cj));
        }
        const double snc = k == 0 ? 1.0 : std::sin(k * d / 2) / (k * d / 2);
        return d / std::sqrt(2 * pi) * snc * sum;
    };
    for (double k : {0.0, 0.3 * order, 1.0 * order, 2.7 * order}) {
        const auto want = oracle(k);
        const auto got = c.at(k);
        CHECK(std::abs(got - want) < 2e-3 * std::abs(oracle(0.0)));
    }
    // at order 5 the sampling error (k h ~ 1) dominates: (kh)^2/24 ~ 4%
    CHECK(std::abs(c.at(5 * order) - oracle(5 * order)) < 0.05 * std::abs(oracle(5 * order)));

    // zeroth-lobe fraction relative to the incident norm ~ (duty)^2
    const double dk = c.k_spacing();
    double lobe = 0;
    for (Index m = 0; m < c.k.size(); ++m)
        if (std::abs(c.k[m]) < order / 2) lobe += std::norm(c.amplitudes[m]) * dk;
    const double incident = testbed::kSlits * testbed::kPeriod;  // |envelope|^2 integral
    CHECK(lobe / incident == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("free propagation basics") {
    const TransverseState s = small_state();
    const BeamSpec beam = testbed::beam();

    SUBCASE("dy = 0 is the identity") {
        const TransverseState out = propagate_free(s, 0.0, beam);
        CHECK((out.psi - s.psi).abs().maxCoeff() == 0.0);
    }
    SUBCASE("negative dy violates the contract") {
        CHECK_THROWS_AS(propagate_free(s, -1e-3, beam), contract_error);
    }
    SUBCASE("norm conservation and composition") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(1e-5, 5e-3);
        for (int trial = 0; trial < 5; ++trial) {
            const double a = u(rng), b = u(rng);
            const TransverseState ab = propagate_free(propagate_free(s, a, beam), b, beam);
            const TransverseState once = propagate_free(s, a + b, beam);
            CHECK(std::abs(ab.norm() - s.norm()) / s.norm() < 1e-9);
            double worst = 0;
            for (Index m = 0; m < s.grid.size; ++m)
                worst = std::max(worst, std::abs(ab.psi[m] - once.psi[m]));
            CHECK(worst < 1e-10);
        }
    }
    SUBCASE("tilted plane wave translates by (q/k) dy") {
        // Gaussian envelope times e^{iqx}: a single tilted beam
        TransverseState g = s;
        const ArrayXd x = g.grid.x();
        const double q = 3e6;
        const double w = 2e-6;
        for (Index m = 0; m < g.grid.size; ++m)
            g.psi[m] = std::exp(std::complex<double>(-x[m] * x[m] / (w * w), q * x[m]));
        const double dy = 4e-3;
        const TransverseState out = propagate_free(g, dy, beam);
        const double expect = (q / beam.wavenumber_k) * dy;
        CHECK(std::abs((out.centroid() - g.centroid()) - expect) < g.grid.spacing);
    }
}

TEST_CASE("Talbot self-image of the grid-periodic Ronchi") {
    // Grating filling the grid exactly: the revival at L_T is exact.
    const double spacing = testbed::kOpenWidth / 16.0;
    const double extent = testbed::kSlits * testbed::kPeriod;  // 768 cells
    const auto grid = SpatialGrid::centered(spacing, extent);
    const auto comb = periodic_comb(testbed::grating(), grid);
    TransverseState s;
    s.grid = grid;
    s.psi = comb.samples.cast<cplx>();
    const double LT = talbot_length(testbed::beam(), testbed::grating());
    const TransverseState out = propagate_free(s, LT, testbed::beam());
    const double err = (out.intensity() - s.intensity()).abs().maxCoeff();
    CHECK(err < 1e-2);   // the spec tolerance
    CHECK(err < 1e-9);   // actual revival quality
}

TEST_CASE("kick: density preserved, record fields, second kick rejected") {
    const BeamSpec beam = testbed::beam();
    const PhotonSpec ph = testbed::photon();
    TransverseState s = propagate_free(small_state(), 5e-3, beam);

    SUBCASE("zero kick leaves the state unchanged") {
        const TransverseState out = apply_kick(s, 0.0, beam, ph);
        CHECK((out.psi - s.psi).abs().maxCoeff() == 0.0);
        CHECK(out.kick.has_value());
    }
    SUBCASE("density at the kick plane is untouched") {
        const TransverseState out = apply_kick(s, 1.3 * ph.wavenumber_i, beam, ph);
        CHECK((out.intensity() - s.intensity()).abs().maxCoeff() <
              1e-10 * s.intensity().maxCoeff());
    }
    SUBCASE("delta_x0 at the full geometry is two grating periods") {
        TransverseState at = propagate_free(small_state(), 19.09e-3, beam);
        const TransverseState out = apply_kick(at, ph.wavenumber_i, beam, ph);
        CHECK(out.kick->delta_x0 == doctest::Approx(4.0e-7).epsilon(5e-3));
    }
    SUBCASE("second kick violates the contract") {
        const TransverseState out = apply_kick(s, 0.5 * ph.wavenumber_i, beam, ph);
        CHECK_THROWS_AS(apply_kick(out, 0.1 * ph.wavenumber_i, beam, ph), contract_error);
    }
    SUBCASE("kick outside [0, 2 k_i] violates the contract") {
        CHECK_THROWS_AS(apply_kick(s, -1.0, beam, ph), contract_error);
        CHECK_THROWS_AS(apply_kick(s, 2.1 * ph.wavenumber_i, beam, ph), contract_error);
    }
}

TEST_CASE("grating application") {
    const TransverseState s = small_state();
    SUBCASE("fully open comb is the identity") {
        GratingSpec open = testbed::grating();
        open.open_width_delta = open.period_dg;
        const auto comb = periodic_comb(open, s.grid);
        const TransverseState out = apply_grating(s, comb);
        CHECK((out.psi - s.psi).abs().maxCoeff() == 0.0);
    }
    SUBCASE("plane wave through the Ronchi keeps the duty-cycle power") {
        TransverseState plane = s;
        plane.psi.setConstant(cplx(1.0, 0.0));
        const auto comb = periodic_comb(testbed::grating(), s.grid);
        const TransverseState out = apply_grating(plane, comb);
        CHECK(out.norm() / plane.norm() == doctest::Approx(0.5).epsilon(1e-3));
    }
    SUBCASE("grid mismatch is a configuration error") {
        const auto other = build_transmission(testbed::grating(),
                                              {testbed::kOpenWidth / 16.0,
                                               2048 * testbed::kOpenWidth / 16.0});
        CHECK_THROWS_AS(apply_grating(s, other), config_error);
    }
}

TEST_CASE("envelope shift at G2 matches dw2") {
    // Full experiment scale; band-limited source keeps the translation exact.
    const BeamSpec beam = testbed::beam();
    const PhotonSpec ph = testbed::photon();
    const GridRequest gr{testbed::kOpenWidth / 16.0, 262144 * testbed::kOpenWidth / 16.0};
    const auto prof = build_transmission(testbed::grating(), gr);
    const ArrayXd env = incident_envelope(testbed::grating(), prof.grid, EnvelopeKind::TopHat);
    TransverseState src = initial_state(prof, env);
    src = band_limit(src, pi / prof.grid.spacing - 2.5 * ph.wavenumber_i);

    const double yp = 5e-3;
    const TransverseState ref = propagate_free(src, testbed::kY12, beam);
    TransverseState kicked = propagate_free(src, yp, beam);
    kicked = apply_kick(kicked, 1.5 * ph.wavenumber_i, beam, ph);
    kicked = propagate_free(kicked, testbed::kY12 - yp, beam);

    const double dw2 = (1.5 * ph.wavenumber_i / beam.wavenumber_k) * (testbed::kY12 - yp);
    CHECK(std::abs(envelope_shift_at(kicked, ref) - dw2) < prof.grid.spacing);

    SUBCASE("at the kick plane itself the shift is zero") {
        const TransverseState at = propagate_free(src, yp, beam);
        const TransverseState k = apply_kick(at, 2.0 * ph.wavenumber_i, beam, ph);
        CHECK(std::abs(envelope_shift_at(k, at)) < 1e-2 * prof.grid.spacing);
    }
    SUBCASE("zero kick means zero shift") {
        TransverseState k0 = propagate_free(src, yp, beam);
        k0 = apply_kick(k0, 0.0, beam, ph);
        k0 = propagate_free(k0, testbed::kY12 - yp, beam);
        CHECK(std::abs(envelope_shift_at(k0, ref)) < 1e-12);
    }
    SUBCASE("states at different y are rejected") {
        CHECK_THROWS_AS(envelope_shift_at(propagate_free(src, 1e-3, beam), ref), contract_error);
    }
}

TEST_CASE("intensity dump schema") {
    const GridRequest gr{testbed::kOpenWidth / 16.0, 1024 * testbed::kOpenWidth / 16.0};
    GratingSpec g = testbed::grating();
    g.illuminated_slits_n = 4;
    const auto prof = build_transmission(g, gr);
    const TransverseState s = initial_state(prof, incident_envelope(g, prof.grid, EnvelopeKind::TopHat));
    const auto path = (std::filesystem::temp_directory_path() / "mzr_slice.csv").string();
    write_intensity_csv(s, path);
    const CsvTable t = read_csv(path);
    REQUIRE(t.header.size() == 2);
    CHECK(t.header[0] == "x_m");
    CHECK(t.header[1] == "intensity");
    CHECK(t.rows.size() == 1024);
    std::remove(path.c_str());
}

TEST_CASE("far field form") {
    const BeamSpec beam = testbed::beam();

    // Coarse wide grid: the far-field test needs reach, not fringe resolution.
    GratingSpec g = testbed::grating();
    const GridRequest gr{50e-9, 1048576 * 50e-9};
    const auto prof = build_transmission(g, gr);
    const ArrayXd env = incident_envelope(g, prof.grid, EnvelopeKind::TopHat);
    const TransverseState src = initial_state(prof, env);
    const MomentumSpectrum c = spectrum_of(src);
    const double LT = talbot_length(beam, g);
    const double halfwidth = testbed::kSlits * testbed::kPeriod / 2;

    SUBCASE("laser-off far field matches full propagation at Fraunhofer ratio 0.11") {
        const double y = 4000 * LT;
        const TransverseState num = propagate_free(src, y, beam);
        KickRecord none{0.0, 0.0, 0.0};
        const TransverseState far = far_field_form(c, none, y, beam, src.grid, halfwidth);
        const ArrayXd In = num.intensity();
        const ArrayXd If = far.intensity();
        CHECK((In - If).abs().maxCoeff() / In.maxCoeff() < 0.02);
    }
    SUBCASE("kicked far field is the unkicked intensity translated by dw2") {
        const double y = 4000 * LT;
        const double dkx = 1.2e7;
        KickRecord kick{dkx, 2e-3, dkx / beam.wavenumber_k * 2e-3};
        KickRecord none{0.0, 0.0, 0.0};
        const TransverseState far0 = far_field_form(c, none, y, beam, src.grid, halfwidth);
        const TransverseState fark = far_field_form(c, kick, y, beam, src.grid, halfwidth);
        const double dw2 = dkx / beam.wavenumber_k * (y - 2e-3);
        const Index cells = static_cast<Index>(std::llround(dw2 / src.grid.spacing));
        const ArrayXd I0 = far0.intensity();
        const ArrayXd Ik = fark.intensity();
        double worst = 0;
        for (Index m = 0; m + cells < src.grid.size; ++m)
            worst = std::max(worst, std::abs(Ik[m + cells] - I0[m]));
        CHECK(worst < 0.05 * I0.maxCoeff());
    }
    SUBCASE("y = 0 violates the contract") {
        KickRecord none{0.0, 0.0, 0.0};
        CHECK_THROWS_AS(far_field_form(c, none, 0.0, beam, src.grid, halfwidth), contract_error);
    }
}
