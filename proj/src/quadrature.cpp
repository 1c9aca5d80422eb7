#include "tachyon/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "tachyon/error.hpp"

namespace tachyon {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const std::complex<double>> f) {
    if (h.size() != f.size() || h.empty()) throw Error(ErrorCode::InvalidArgument, "extrapolation needs matching samples");
    const std::size_t n = h.size();
    // Neville tableau evaluated at 0; column j holds degree-j interpolants.
    std::vector<std::complex<double>> prev(f.begin(), f.end());
    std::complex<double> best = prev.back();
    std::complex<double> lower = prev.back();
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<std::complex<double>> cur(n);
        for (std::size_t i = j; i < n; ++i) {
            const double denom = h[i - j] - h[i];
            if (denom == 0.0) throw Error(ErrorCode::InvalidArgument, "extrapolation abscissae must be distinct");
            cur[i] = prev[i] + (prev[i] - prev[i - 1]) * h[i] / denom;
        }
        lower = best;
        best = cur[n - 1];
        prev = std::move(cur);
    }
    return {best, std::abs(best - lower)};
}

}  // namespace tachyon
