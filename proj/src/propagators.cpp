#include "tachyon/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tachyon/error.hpp"
#include "tachyon/quadrature.hpp"

namespace tachyon {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiCubed = 8.0 * kPi * kPi * kPi;
constexpr int kPanelNodes = 12;
// e^{-38} ~ 3e-17: damping cutoff for the truncated oscillatory integrals.
constexpr double kDampingDecades = 38.0;

double weight_sq_norm(const Mode& mode) { return 1.0 / (kTwoPiCubed * 2.0 * mode.omega); }

// Integrand of the angle-integrated Delta+ after k dk = omega domega.
struct RadialIntegrand {
    double t;
    double r;
    double m;

    cd operator()(double omega) const {
        const double k = std::sqrt(omega * omega + m * m);
        const double amplitude = r > 0.0 ? std::sin(r * k) / (4.0 * kPi * kPi * r) : k / (4.0 * kPi * kPi);
        return std::polar(amplitude, -omega * t);
    }

    // Bound on integral_W^inf |f| e^{-eps omega} domega.
    double tail_bound(double cut, double eps) const {
        const double decay = std::exp(-eps * cut);
        if (r > 0.0) return decay / (eps * 4.0 * kPi * kPi * r);
        return (std::hypot(cut, m) / eps + 1.0 / (eps * eps)) * decay / (4.0 * kPi * kPi);
    }
};

struct RadialNodes {
    std::vector<double> omega;
    std::vector<double> weight;
    std::vector<cd> value;
};

// Composite Gauss-Legendre panels on [0, cut]. Panels never exceed half an
// oscillation period, stay below 0.5/m near the origin where k(omega) bends,
// and resolve the strongest damping factor.
RadialNodes radial_nodes(const RadialIntegrand& f, double cut, double eps_max, int min_nodes) {
    const double speed = f.r + std::abs(f.t);
    const double h_osc = speed > 0.0 ? kPi / speed : 1e300;
    const double h_damp = 2.0 / eps_max;
    const GaussLegendreRule& rule = gauss_legendre(kPanelNodes);

    double refine = 1.0;
    RadialNodes nodes;
    for (;;) {
        nodes = {};
        double a = 0.0;
        while (a < cut) {
            const double h_shape = std::max(0.5 / f.m, 0.25 * a);
            const double width = std::min({h_osc, h_shape, h_damp, cut - a}) / refine;
            for (int i = 0; i < kPanelNodes; ++i) {
                const double w = a + 0.5 * width * (rule.nodes[static_cast<std::size_t>(i)] + 1.0);
                nodes.omega.push_back(w);
                nodes.weight.push_back(0.5 * width * rule.weights[static_cast<std::size_t>(i)]);
            }
            a += width;
        }
        if (static_cast<int>(nodes.omega.size()) >= min_nodes) break;
        refine *= 2.0;
    }
    nodes.value.reserve(nodes.omega.size());
    for (double w : nodes.omega) nodes.value.push_back(f(w));
    return nodes;
}

cd damped_sum(const RadialNodes& nodes, double eps) {
    cd sum = 0.0;
    for (std::size_t i = 0; i < nodes.omega.size(); ++i)
        sum += nodes.value[i] * (nodes.weight[i] * std::exp(-eps * nodes.omega[i]));
    return sum;
}

double omega_cap(double k_max, TachyonMass m) { return std::sqrt(k_max * k_max - m.squared()); }

void require_radius(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "radial distance must be finite and >= 0");
}

}  // namespace

QuadratureSpec QuadratureSpec::defaults(TachyonMass m) {
    QuadratureSpec spec;
    spec.k_max = 1e6 * m.value();
    return spec;
}

void QuadratureSpec::validate(TachyonMass m) const {
    if (eps_damping.empty()) throw Error(ErrorCode::InvalidArgument, "eps_damping ladder is empty");
    for (std::size_t i = 0; i < eps_damping.size(); ++i) {
        if (!(eps_damping[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_damping entries must be > 0");
        if (i > 0 && !(eps_damping[i] < eps_damping[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "eps_damping must be strictly decreasing");
    }
    if (!(k_max > 10.0 * m.value())) throw Error(ErrorCode::InvalidArgument, "k_max must exceed 10 m");
    if (n_points < 100) throw Error(ErrorCode::InvalidArgument, "n_points must be >= 100");
    if (extrapolation_order < 1 || static_cast<std::size_t>(extrapolation_order) + 1 > eps_damping.size())
        throw Error(ErrorCode::InvalidArgument, "extrapolation_order needs order + 1 damping values");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
    if (!(light_cone_band >= 0.0)) throw Error(ErrorCode::InvalidArgument, "light_cone_band must be >= 0");
}

nlohmann::json QuadratureSpec::to_json() const {
    return {{"eps_damping", eps_damping},         {"k_max", k_max},
            {"n_points", n_points},               {"extrapolation_order", extrapolation_order},
            {"tolerance", tolerance},             {"light_cone_band", light_cone_band}};
}

cd wightman_mode_sum(const FourVector& x, const FourVector& y, std::span<const Mode> modes, double measure) {
    const FourVector d = x - y;
    const Vec3 r = d.spatial();
    cd sum = 0.0;
    for (const Mode& mode : modes) {
        const double phase = mode.omega * d.t - mode.kvec.dot(r);
        sum += weight_sq_norm(mode) * std::polar(1.0, -phase);
    }
    return measure * sum;
}

cd wightman_box(const FourVector& x, const FourVector& y, const ModeSet& ms) {
    return wightman_mode_sum(x, y, ms.modes(), ms.measure());
}

cd wightman_box_damped(const FourVector& x, const FourVector& y, const ModeSet& ms, double eps) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "damping must be >= 0");
    const FourVector d = x - y;
    const Vec3 r = d.spatial();
    cd sum = 0.0;
    for (const Mode& mode : ms.modes()) {
        const double phase = mode.omega * d.t - mode.kvec.dot(r);
        sum += weight_sq_norm(mode) * std::polar(std::exp(-eps * mode.omega), -phase);
    }
    return ms.measure() * sum;
}

PropagatorValue wightman_radial(double t, double r, TachyonMass m, const QuadratureSpec& spec) {
    spec.validate(m);
    require_radius(r);
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite");
    const double gap = r > 0.0 ? std::abs(std::abs(t) - r) : std::abs(t);
    if (gap <= spec.light_cone_band / m.value())
        throw Error(ErrorCode::LightConeSingular, "point lies inside the light-cone exclusion band");

    const auto order = static_cast<std::size_t>(spec.extrapolation_order);
    std::vector<double> eps(spec.eps_damping.end() - static_cast<std::ptrdiff_t>(order + 1), spec.eps_damping.end());
    for (double& e : eps) e *= gap;

    const RadialIntegrand f{t, r, m.value()};
    const double cut = std::min(omega_cap(spec.k_max, m), kDampingDecades / eps.back());
    const RadialNodes nodes = radial_nodes(f, cut, eps.front(), spec.n_points);

    std::vector<cd> samples;
    samples.reserve(eps.size());
    for (double e : eps) samples.push_back(damped_sum(nodes, e));
    const Extrapolated ex = extrapolate_to_zero(eps, samples);

    // Truncated tails enter the extrapolant through its Lagrange weights at 0.
    double tail = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double weight = 1.0;
        for (std::size_t j = 0; j < eps.size(); ++j)
            if (j != i) weight *= eps[j] / (eps[j] - eps[i]);
        tail += std::abs(weight) * f.tail_bound(cut, eps[i]);
    }

    PropagatorValue out{ex.value, ex.residual + tail};
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) ||
        out.est_error > spec.tolerance * std::abs(out.value))
        throw Error(ErrorCode::NonConvergent, "damped extrapolation residual exceeds tolerance");
    return out;
}

PropagatorValue wightman_radial_damped(double t, double r, double eps, TachyonMass m, const QuadratureSpec& spec) {
    spec.validate(m);
    require_radius(r);
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "damping must be > 0");
    const RadialIntegrand f{t, r, m.value()};
    const double cut = std::min(omega_cap(spec.k_max, m), kDampingDecades / eps);
    const RadialNodes nodes = radial_nodes(f, cut, eps, spec.n_points);
    return {damped_sum(nodes, eps), f.tail_bound(cut, eps)};
}

PropagatorValue BoxEvaluator::wightman(const FourVector& x, const FourVector& y) const {
    return {wightman_box(x, y, modes_), 0.0};
}

nlohmann::json BoxEvaluator::describe() const {
    return {{"evaluator", "box"},
            {"mass", modes_.mass().value()},
            {"box_length", modes_.box_length()},
            {"n_max", modes_.n_max()},
            {"mode_count", modes_.size()},
            {"measure", modes_.measure()}};
}

RadialEvaluator::RadialEvaluator(TachyonMass m, QuadratureSpec spec) : mass_(m), spec_(std::move(spec)) {
    spec_.validate(m);
}

PropagatorValue RadialEvaluator::wightman(const FourVector& x, const FourVector& y) const {
    const FourVector d = x - y;
    return wightman_radial(d.t, d.spatial().norm(), mass_, spec_);
}

nlohmann::json RadialEvaluator::describe() const {
    return {{"evaluator", "radial"}, {"mass", mass_.value()}, {"quadrature", spec_.to_json()}};
}

PropagatorValue BoostedEvaluator::wightman(const FourVector& x, const FourVector& y) const {
    const Boost back = boost_.inverse();
    return base_.wightman(back.apply(x), back.apply(y));
}

nlohmann::json BoostedEvaluator::describe() const {
    const Vec3& n = boost_.axis();
    return {{"evaluator", "boosted"},
            {"beta", boost_.beta()},
            {"axis", {n.x(), n.y(), n.z()}},
            {"base", base_.describe()}};
}

PropagatorValue commutator(const FourVector& x, const FourVector& y, const Evaluator& source) {
    const PropagatorValue w = source.wightman(x, y);
    return {cd(2.0 * w.value.imag(), 0.0), 2.0 * w.est_error};
}

PropagatorValue symmetric_part(const FourVector& x, const FourVector& y, const Evaluator& source) {
    const PropagatorValue w = source.wightman(x, y);
    return {cd(2.0 * w.value.real(), 0.0), 2.0 * w.est_error};
}

double commutator_box_dt(const FourVector& x, const FourVector& y, const ModeSet& ms) {
    const FourVector d = x - y;
    const Vec3 r = d.spatial();
    cd sum = 0.0;
    for (const Mode& mode : ms.modes()) {
        const double phase = mode.omega * d.t - mode.kvec.dot(r);
        sum += weight_sq_norm(mode) * cd(0.0, -mode.omega) * std::polar(1.0, -phase);
    }
    return 2.0 * (ms.measure() * sum).imag();
}

cd massless_wightman(const FourVector& x, double band) {
    const double r = x.spatial().norm();
    const double s = r * r - x.t * x.t;
    if (s == 0.0 || std::abs(std::abs(x.t) - r) <= band)
        throw Error(ErrorCode::LightConeSingular, "massless two-point function is singular on the light cone");
    return {1.0 / (4.0 * kPi * kPi * s), 0.0};
}

PropagatorValue boosted_wightman(const FourVector& x, const FourVector& y, const Boost& b, const Evaluator& source) {
    return BoostedEvaluator(source, b).wightman(x, y);
}

double pct_residual(const FourVector& x, const Evaluator& source) {
    const FourVector origin{};
    const cd forward = source.wightman(x, origin).value;
    const cd reflected = source.wightman(-x, origin).value;
    return std::abs(std::conj(forward) - reflected);
}

std::vector<ScalingPoint> scaling_limit_curve(const FourVector& x, std::span<const double> lambdas, TachyonMass m,
                                              const QuadratureSpec& spec) {
    const cd reference = massless_wightman(x);
    const double r = x.spatial().norm();
    std::vector<ScalingPoint> curve;
    curve.reserve(lambdas.size());
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "scaling parameters must be > 0");
        const PropagatorValue v = wightman_radial(lambda * x.t, lambda * r, m, spec);
        const double scale = std::abs(reference);
        curve.push_back({lambda, std::abs(lambda * lambda * v.value - reference) / scale,
                         lambda * lambda * v.est_error / scale});
    }
    return curve;
}

cd smeared_wightman_box(const GaussianSmearing& f, double tx, int dtx, const GaussianSmearing& g, double ty, int dty,
                        const ModeSet& ms) {
    if (dtx < 0 || dty < 0) throw Error(ErrorCode::InvalidArgument, "derivative orders must be >= 0");
    cd sum = 0.0;
    for (const Mode& mode : ms.modes()) {
        cd factor = weight_sq_norm(mode) * std::polar(1.0, -mode.omega * (tx - ty));
        factor *= std::pow(cd(0.0, -mode.omega), dtx) * std::pow(cd(0.0, mode.omega), dty);
        sum += factor * f.fourier(mode.kvec) * g.fourier(-mode.kvec);
    }
    return ms.measure() * sum;
}

cd smeared_equal_time_commutator(const GaussianSmearing& f, const GaussianSmearing& g, double t, const ModeSet& ms) {
    return smeared_wightman_box(f, t, 0, g, t, 0, ms) - smeared_wightman_box(g, t, 0, f, t, 0, ms);
}

cd smeared_field_momentum_commutator(const GaussianSmearing& f, const GaussianSmearing& g, double t,
                                     const ModeSet& ms) {
    return smeared_wightman_box(f, t, 0, g, t, 1, ms) - smeared_wightman_box(g, t, 1, f, t, 0, ms);
}

cd klein_gordon_residual_box(const FourVector& x, const ModeSet& ms, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be > 0");
    const FourVector origin{};
    auto w = [&](const FourVector& p) { return wightman_box(p, origin, ms); };
    const cd centre = w(x);
    const double h2 = h * h;
    cd box = (w(x + FourVector{h, 0, 0, 0}) + w(x - FourVector{h, 0, 0, 0}) - 2.0 * centre) / h2;
    const FourVector steps[3] = {{0, h, 0, 0}, {0, 0, h, 0}, {0, 0, 0, h}};
    for (const FourVector& s : steps) box -= (w(x + s) + w(x - s) - 2.0 * centre) / h2;
    return box - ms.mass().squared() * centre;
}

}  // namespace tachyon
