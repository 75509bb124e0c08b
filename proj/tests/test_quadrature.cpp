#include <doctest.h>

#include <cmath>

#include "mzrecoil/quadrature.hpp"
#include "mzrecoil/types.hpp"

using namespace mzr;
using cplx = std::complex<double>;

TEST_CASE("polynomials and oscillatory integrands") {
    const double cubic = adaptive_simpson_real([](double x) { return x * x * x; }, 0.0, 1.0);
    CHECK(cubic == doctest::Approx(0.25).epsilon(1e-12));

    const cplx circle = adaptive_simpson([](double x) { return std::exp(cplx(0, x)); }, 0.0,
                                         2 * pi, 1e-12);
    CHECK(std::abs(circle) < 1e-10);

    // e^{i a x} over [0, 1] against the closed form, several frequencies
    for (double a : {0.5, 3.0, 25.0}) {
        const cplx got = adaptive_simpson([a](double x) { return std::exp(cplx(0, a * x)); },
                                          0.0, 1.0, 1e-12);
        const cplx want = (std::exp(cplx(0, a)) - 1.0) / cplx(0, a);
        CHECK(std::abs(got - want) < 1e-10);
    }
}

TEST_CASE("non-convergence raises with diagnostics") {
    // integrable singularity, absurd tolerance, tiny depth budget
    CHECK_THROWS_AS(adaptive_simpson_real([](double x) { return 1.0 / std::sqrt(x + 1e-300); },
                                          0.0, 1.0, 1e-14, 6),
                    numeric_error);
}

TEST_CASE("fixed Simpson nodes") {
    std::vector<double> nodes, w;
    simpson_nodes(0.0, 2.0, 129, nodes, w);
    REQUIRE(nodes.size() == 129);
    double sum = 0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    // integrates cubics exactly
    double acc = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * nodes[i] * nodes[i] * nodes[i];
    CHECK(acc == doctest::Approx(4.0).epsilon(1e-13));
    CHECK_THROWS_AS(simpson_nodes(0.0, 1.0, 4, nodes, w), contract_error);
}
