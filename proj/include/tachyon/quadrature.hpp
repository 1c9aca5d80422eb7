#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tachyon {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n). Rules are cached.
const GaussLegendreRule& gauss_legendre(int n);

struct Extrapolated {
    std::complex<double> value;
    /// |highest order - next lower order|
    double residual;
};

/// Polynomial (Neville) extrapolation of samples f(h_i) to h = 0 using all
/// points; h must be distinct. This is Richardson extrapolation for an
/// unknown power series in h.
Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const std::complex<double>> f);

}  // namespace tachyon
