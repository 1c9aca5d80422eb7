#include <doctest.h>

#include <cmath>

#include "tachyon/quadrature.hpp"

using namespace tachyon;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
    for (int n : {2, 5, 12, 16}) {
        const GaussLegendreRule& rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (int p = 0; p < 2 * n; ++p) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(sum - exact) < 1e-14);
        }
    }
    CHECK(&gauss_legendre(12) == &gauss_legendre(12));
}

TEST_CASE("extrapolation to zero recovers polynomial limits") {
    const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
    std::vector<std::complex<double>> f;
    for (double x : h) f.emplace_back(3.0 - 2.0 * x + 0.5 * x * x, x);
    const Extrapolated e = extrapolate_to_zero(h, f);
    CHECK(std::abs(e.value - std::complex<double>(3.0, 0.0)) < 1e-13);
    CHECK(e.residual < 1e-12);

    std::vector<std::complex<double>> g;
    for (double x : h) g.emplace_back(std::exp(x));
    const Extrapolated eg = extrapolate_to_zero(h, g);
    CHECK(std::abs(eg.value - 1.0) < 1e-4);
    CHECK(eg.residual > std::abs(eg.value - 1.0) * 0.1);
}
