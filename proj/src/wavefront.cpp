#include "tachyon/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tachyon/error.hpp"
#include "tachyon/quadrature.hpp"

namespace tachyon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPanelNodes = 16;
constexpr int kScanPoints = 4001;

void require_probe_args(double sigma, double R) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "window sigma must be > 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw Error(ErrorCode::InvalidArgument, "probe radius must be > 0");
}

void require_resolution(const ProbeResolution& res) {
    if (!(res.window_cut > 0.0) || !(res.nodes_scale > 0.0) || !(res.refinement_tolerance > 0.0) ||
        res.max_nodes == 0)
        throw Error(ErrorCode::InvalidArgument, "probe resolution parameters must be positive");
}

// Probe geometry in a frame whose polar axis is the spatial part of dir.
struct Geometry {
    double m;
    double sigma;
    double Rd0;
    double Rdn;
    double b0;
    double bpar;
    double bperp;
    double phase0;

    double q0(double omega) const {
        const double k = std::hypot(omega, m);
        return (omega - Rd0) * (omega - Rd0) + (k - Rdn) * (k - Rdn);
    }
};

Geometry make_geometry(const FourVector& b, const FourVector& d, double sigma, double R, double m) {
    const Vec3 dv = d.spatial();
    const double dn = dv.norm();
    const Vec3 axis = dn > 0.0 ? Vec3(dv / dn) : Vec3::UnitZ();
    const Vec3 bv = b.spatial();
    const double bpar = bv.dot(axis);
    return {m, sigma, R * d.t, R * dn, b.t, bpar, (bv - bpar * axis).norm(), R * minkowski_dot(d, b)};
}

struct OmegaWindow {
    double lo;
    double hi;
    double qmin;
};

// Hull of {omega >= 0 : Q0(omega) <= min Q0 + (cut/sigma)^2}.
OmegaWindow omega_window(const Geometry& g, double cut) {
    const double span = std::abs(g.Rd0) + g.Rdn + 2.0 * cut / g.sigma + g.m;
    const double step = span / (kScanPoints - 1);
    std::vector<double> q(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) q[static_cast<std::size_t>(i)] = g.q0(i * step);
    const auto best = std::min_element(q.begin(), q.end());
    const double centre = static_cast<double>(best - q.begin()) * step;

    // Golden-section polish inside the bracketing scan cells.
    double a = std::max(0.0, centre - step);
    double c = std::min(span, centre + step);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double x1 = c - ratio * (c - a);
        const double x2 = a + ratio * (c - a);
        if (g.q0(x1) < g.q0(x2))
            c = x2;
        else
            a = x1;
    }
    const double qmin = std::min(*best, g.q0(0.5 * (a + c)));

    const double limit = qmin + (cut / g.sigma) * (cut / g.sigma);
    int first = kScanPoints - 1;
    int last = 0;
    for (int i = 0; i < kScanPoints; ++i) {
        if (q[static_cast<std::size_t>(i)] <= limit) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    if (first > last) first = last = static_cast<int>(best - q.begin());
    return {std::max(0.0, (first - 1) * step), (last + 1) * step, qmin};
}

struct Accumulated {
    cd sum{0.0, 0.0};
    double magnitude = 0.0;
};

Accumulated integrate_continuum(const Geometry& g, const OmegaWindow& w, double cut, double density,
                                std::size_t max_nodes) {
    const GaussLegendreRule& rule = gauss_legendre(kPanelNodes);
    const double cut2 = (cut / g.sigma) * (cut / g.sigma);
    const double speed = std::abs(g.b0) + std::abs(g.bpar) + g.bperp;
    const double h_phase = speed > 0.0 ? kPi / speed : 1e300;
    const double s2 = g.sigma * g.sigma;

    Accumulated acc;
    std::size_t nodes = 0;
    double a = w.lo;
    while (a < w.hi) {
        const double h_shape = std::max(0.5 / g.m, 0.25 * a);
        const double width = std::min({1.0 / g.sigma, h_phase, h_shape}) / density;
        const double b = std::min(w.hi, a + width);
        for (int i = 0; i < kPanelNodes; ++i) {
            const double omega = a + 0.5 * (b - a) * (rule.nodes[static_cast<std::size_t>(i)] + 1.0);
            const double w_omega = 0.5 * (b - a) * rule.weights[static_cast<std::size_t>(i)];
            const double k = std::hypot(omega, g.m);
            const double excess = g.q0(omega) - w.qmin;
            if (excess > cut2) continue;
            const double umax = g.Rdn > 0.0 ? std::min(2.0, (cut2 - excess) / (2.0 * k * g.Rdn)) : 2.0;
            const double smax = std::sqrt(umax);
            const double freq = 2.0 * k * std::abs(g.bpar) * smax + 2.0 * k * g.bperp;
            const int panels = static_cast<int>(std::ceil(density * (2.0 + smax * freq / kPi)));
            nodes += static_cast<std::size_t>(panels) * kPanelNodes;
            if (nodes > max_nodes)
                throw Error(ErrorCode::InsufficientResolution, "wave-front probe exceeds the quadrature node budget");
            const double hs = smax / panels;
            for (int p = 0; p < panels; ++p) {
                for (int j = 0; j < kPanelNodes; ++j) {
                    const double s = hs * (p + 0.5 * (rule.nodes[static_cast<std::size_t>(j)] + 1.0));
                    const double ws = 0.5 * hs * rule.weights[static_cast<std::size_t>(j)];
                    const double u = s * s;
                    const double cos_theta = 1.0 - u;
                    const double sin_theta = s * std::sqrt(std::max(0.0, 2.0 - u));
                    const double weight = std::exp(-0.5 * s2 * (excess + 2.0 * k * g.Rdn * u));
                    const double azimuth = g.bperp > 0.0 ? std::cyl_bessel_j(0.0, k * sin_theta * g.bperp) : 1.0;
                    const double amplitude = w_omega * ws * 2.0 * s * 0.5 * k * weight * 2.0 * kPi * azimuth;
                    const double phase = g.phase0 - omega * g.b0 + k * cos_theta * g.bpar;
                    acc.sum += std::polar(amplitude, phase);
                    acc.magnitude += std::abs(amplitude);
                }
            }
        }
        a = b;
    }
    return acc;
}

// (2 pi sigma^2)^2 from the 4D window, (2 pi)^-3 from Delta+.
double window_prefactor(double sigma) {
    const double v = 2.0 * kPi * sigma * sigma;
    return v * v / (8.0 * kPi * kPi * kPi);
}

WindowedValue combine(const WindowedValue& x, const WindowedValue& y) {
    const double scale = std::max(x.log_scale, y.log_scale);
    const double fx = std::exp(x.log_scale - scale);
    const double fy = std::exp(y.log_scale - scale);
    return {x.mantissa * fx + y.mantissa * fy, scale, x.est_error * fx + y.est_error * fy};
}

}  // namespace

const char* to_string(DecayClass c) { return c == DecayClass::Rapid ? "rapid" : "slow"; }

const char* to_string(ProbeTarget t) { return t == ProbeTarget::Wightman ? "wightman" : "symmetric"; }

double WindowedValue::log_magnitude() const {
    const double a = std::abs(mantissa);
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(a) + log_scale;
}

WindowedValue windowed_transform(const FourVector& base, const FourVector& dir, double sigma, double R, TachyonMass m,
                                 const ProbeResolution& res) {
    require_probe_args(sigma, R);
    require_resolution(res);
    const Geometry g = make_geometry(base, dir, sigma, R, m.value());
    const OmegaWindow w = omega_window(g, res.window_cut);
    const Accumulated coarse = integrate_continuum(g, w, res.window_cut, res.nodes_scale, res.max_nodes);
    const Accumulated fine = integrate_continuum(g, w, res.window_cut, 1.5 * res.nodes_scale, res.max_nodes);

    const double c = window_prefactor(sigma);
    const double diff = std::abs(fine.sum - coarse.sum);
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * fine.magnitude;
    if (diff > res.refinement_tolerance * std::abs(fine.sum) + roundoff)
        throw Error(ErrorCode::InsufficientResolution, "wave-front probe grid does not resolve the window");
    return {c * fine.sum, -0.5 * sigma * sigma * w.qmin, c * (diff + roundoff)};
}

WindowedValue windowed_transform(const FourVector& base, const FourVector& dir, double sigma, double R,
                                 const ModeSet& ms, const ProbeResolution& res) {
    require_probe_args(sigma, R);
    require_resolution(res);
    const double k_lattice = 2.0 * kPi * ms.n_max() / ms.box_length();
    const double cut = res.window_cut;
    if (R * dir.spatial().norm() + cut / sigma > k_lattice)
        throw Error(ErrorCode::InsufficientResolution, "probe window extends past the lattice cutoff");
    if (2.0 * cut * sigma > ms.box_length())
        throw Error(ErrorCode::InsufficientResolution, "probe window does not fit inside half the box");

    const Vec3 Rd = R * dir.spatial();
    const double Rd0 = R * dir.t;
    const Vec3 bv = base.spatial();
    auto q = [&](const Mode& mode) { return (mode.omega - Rd0) * (mode.omega - Rd0) + (mode.kvec - Rd).squaredNorm(); };
    double qmin = std::numeric_limits<double>::infinity();
    for (const Mode& mode : ms.modes()) qmin = std::min(qmin, q(mode));

    const double phase0 = R * minkowski_dot(dir, base);
    const double s2 = sigma * sigma;
    cd sum = 0.0;
    double magnitude = 0.0;
    for (const Mode& mode : ms.modes()) {
        const double amplitude = std::exp(-0.5 * s2 * (q(mode) - qmin)) / (2.0 * mode.omega);
        sum += std::polar(amplitude, phase0 - mode.omega * base.t + mode.kvec.dot(bv));
        magnitude += amplitude;
    }
    const double c = window_prefactor(sigma) * ms.measure();
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return {c * sum, -0.5 * s2 * qmin, c * roundoff};
}

nlohmann::json DecayReport::to_json() const {
    return {{"radii", radii},
            {"magnitudes", magnitudes},
            {"log_magnitudes", log_magnitudes},
            {"est_errors", est_errors},
            {"fitted_slope", fitted_slope},
            {"decay", to_string(decay)}};
}

DecayReport classify_decay(std::vector<double> radii, std::vector<WindowedValue> values, int max_power) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw Error(ErrorCode::InvalidArgument, "decay fit needs at least two radii with one value each");
    if (max_power < 0) throw Error(ErrorCode::InvalidArgument, "max_power must be >= 0");
    DecayReport report;
    report.radii = std::move(radii);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    bool vanished = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double ly = values[i].log_magnitude();
        report.log_magnitudes.push_back(ly);
        report.magnitudes.push_back(std::exp(ly));
        report.est_errors.push_back(values[i].est_error * std::exp(values[i].log_scale));
        if (!std::isfinite(ly)) {
            vanished = true;
            continue;
        }
        const double lx = std::log(report.radii[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const auto n = static_cast<double>(values.size());
    if (vanished) {
        report.fitted_slope = -std::numeric_limits<double>::infinity();
    } else {
        const double denom = n * sxx - sx * sx;
        if (!(denom > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay fit needs distinct radii");
        report.fitted_slope = (n * sxy - sx * sy) / denom;
    }
    report.decay = report.fitted_slope <= -(max_power + 1.0) ? DecayClass::Rapid : DecayClass::Slow;
    return report;
}

namespace {

template <class Source>
DecayReport run_probe(const WavefrontProbe& probe, const Source& source, const ProbeResolution& res) {
    if (!std::is_sorted(probe.radii.begin(), probe.radii.end()) ||
        std::adjacent_find(probe.radii.begin(), probe.radii.end()) != probe.radii.end())
        throw Error(ErrorCode::InvalidArgument, "probe radii must be strictly increasing");
    std::vector<WindowedValue> values;
    for (double R : probe.radii) {
        WindowedValue v = windowed_transform(probe.base, probe.direction, probe.window_sigma, R, source, res);
        // Delta1(xi) = Delta+(xi) + Delta+(-xi); the mirrored term is the probe at (-base, -dir).
        if (probe.target == ProbeTarget::Symmetric)
            v = combine(v, windowed_transform(-probe.base, -probe.direction, probe.window_sigma, R, source, res));
        values.push_back(v);
    }
    return classify_decay(probe.radii, std::move(values), probe.max_power);
}

}  // namespace

DecayReport wavefront_decay_probe(const WavefrontProbe& probe, TachyonMass m, const ProbeResolution& res) {
    return run_probe(probe, m, res);
}

DecayReport wavefront_decay_probe(const WavefrontProbe& probe, const ModeSet& ms, const ProbeResolution& res) {
    return run_probe(probe, ms, res);
}

}  // namespace tachyon
