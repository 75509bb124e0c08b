#include <doctest.h>

#include "mzrecoil/types.hpp"
#include "support.hpp"

using namespace mzr;

TEST_CASE("beam and photon invariants") {
    const BeamSpec b = testbed::beam();
    CHECK(std::abs(b.wavenumber_k * b.de_broglie_wavelength - 2 * pi) / (2 * pi) < 1e-12);
    CHECK_NOTHROW(b.validate());

    BeamSpec bad = b;
    bad.de_broglie_wavelength *= 1.0 + 1e-9;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = b;
    bad.speed = -1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);

    const PhotonSpec p = testbed::photon();
    CHECK(p.wavenumber_i == doctest::Approx(1.06675e7).epsilon(1e-4));
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("grating and geometry validation") {
    GratingSpec g = testbed::grating();
    CHECK_NOTHROW(g.validate());
    g.open_width_delta = g.period_dg * 1.5;
    CHECK_THROWS_AS(g.validate(), config_error);
    g = testbed::grating();
    g.illuminated_slits_n = 0;
    CHECK_THROWS_AS(g.validate(), config_error);

    Geometry geo = testbed::geometry();
    CHECK_NOTHROW(geo.validate());
    geo.y_prime_12 = geo.y12 * 2;
    CHECK_THROWS_AS(geo.validate(), config_error);
}

TEST_CASE("derived quantities against the experiment scales") {
    const auto d0 = derived_quantities(testbed::beam(), testbed::photon(), testbed::grating(),
                                       testbed::geometry(0.0));
    CHECK(d0.d_p == 0.0);
    // Talbot distance 6.48 mm
    CHECK(d0.talbot_length == doctest::Approx(6.48e-3).epsilon(1e-3));

    const auto d1 = derived_quantities(testbed::beam(), testbed::photon(), testbed::grating(),
                                       testbed::geometry(19.09e-3));
    CHECK(d1.dp_over_lambda_i == doctest::Approx(2.0).epsilon(5e-3));

    // scale consistency: doubling y' doubles d_p exactly
    const double dp1 = path_separation(testbed::beam(), testbed::grating(), 7.3e-3);
    const double dp2 = path_separation(testbed::beam(), testbed::grating(), 14.6e-3);
    CHECK(dp2 == 2.0 * dp1);

    // y_prime_for_dp inverts path_separation
    const double yp = y_prime_for_dp(testbed::beam(), testbed::grating(), dp1);
    CHECK(yp == doctest::Approx(7.3e-3).epsilon(1e-14));
}
