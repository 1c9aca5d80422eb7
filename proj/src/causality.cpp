#include "tachyon/causality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tachyon/error.hpp"

namespace tachyon {

namespace {

Vec3 random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        const Vec3 v(normal(rng), normal(rng), normal(rng));
        const double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

// Uniform in (m, 10 m].
double random_wavenumber(std::mt19937_64& rng, TachyonMass m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double k = m.value() * (10.0 - 9.0 * u(rng));
        if (k * k - m.squared() > 1e-12 * m.squared()) return k;
    }
}

nlohmann::json four_vector_json(const FourVector& v) { return {v.t, v.x, v.y, v.z}; }

}  // namespace

SpectrumCut::SpectrumCut(TachyonMass m, double beta) : m_(m), beta_(beta) {
    if (!(std::abs(beta) < 1.0)) throw Error(ErrorCode::InvalidArgument, "|beta| must be < 1");
}

bool spectrum_allowed(const FourVector& k4, const SpectrumCut& cut, double tol) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
    const bool on_shell = std::abs(minkowski_square(k4) + cut.mass().squared()) <= tol;
    return on_shell && k4.t + cut.beta() * k4.z > 0.0;
}

bool spectrum_allowed(const FourVector& k4, const SpectrumCut& cut) {
    return spectrum_allowed(k4, cut, cut.default_tolerance());
}

bool halving_consistency(const FourVector& k4, const SpectrumCut& cut, double tol) {
    if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
    if (std::abs(minkowski_square(k4) + cut.mass().squared()) > tol)
        throw Error(ErrorCode::InvalidArgument, "halving check needs an on-shell momentum");
    if (std::abs(k4.t + cut.beta() * k4.z) <= tol)
        throw Error(ErrorCode::OnCutPlane, "momentum lies on the cut plane k0 + beta kz = 0");
    return spectrum_allowed(k4, cut, tol) != spectrum_allowed(-k4, cut, tol);
}

bool halving_consistency(const FourVector& k4, const SpectrumCut& cut) {
    return halving_consistency(k4, cut, cut.default_tolerance());
}

FourVector leg_displacement(const SignalLeg& leg, TachyonMass m) {
    if (!(leg.duration > 0.0) || !std::isfinite(leg.duration))
        throw Error(ErrorCode::SpectrumForbiddenLeg, "leg runs backward in preferred-frame time");
    return FourVector::from(leg.duration, leg.duration * group_velocity(leg.kvec, m));
}

double leg_time_in_frame(const SignalLeg& leg, const Boost& b, TachyonMass m) {
    return boost_apply(b, leg_displacement(leg, m)).t;
}

nlohmann::json ChainVerdict::to_json() const {
    return {{"violation", violation},
            {"final_event", four_vector_json(final_event)},
            {"total_dt", total_dt},
            {"net_interval", std::string(to_string(net_interval))},
            {"min_leg_time_in_frames", min_leg_time_in_frames},
            {"frames_checked", frames_checked}};
}

ChainVerdict antitelephone_check(const RelayChain& chain, TachyonMass m, std::span<const Boost> frames) {
    if (!chain.origin.is_finite()) throw Error(ErrorCode::InvalidArgument, "chain origin must be finite");
    ChainVerdict verdict;
    verdict.final_event = chain.origin;
    verdict.min_leg_time_in_frames = std::numeric_limits<double>::infinity();
    verdict.frames_checked = frames.size() + 1;
    for (const SignalLeg& leg : chain.legs) {
        const FourVector d = leg_displacement(leg, m);
        verdict.final_event = verdict.final_event + d;
        verdict.total_dt += d.t;
        verdict.min_leg_time_in_frames = std::min(verdict.min_leg_time_in_frames, d.t);
        for (const Boost& b : frames) verdict.min_leg_time_in_frames = std::min(verdict.min_leg_time_in_frames, boost_apply(b, d).t);
    }
    const FourVector net = verdict.final_event - chain.origin;
    const double tol = 1e-12 * euclidean_square(net);
    verdict.net_interval = interval_class(net, tol);
    auto in_past = [&](const FourVector& v) { return interval_class(v, tol) == IntervalClass::Timelike && v.t < 0.0; };
    verdict.violation = in_past(net);
    for (const Boost& b : frames) verdict.violation = verdict.violation || in_past(boost_apply(b, net));
    if (chain.legs.empty()) verdict.min_leg_time_in_frames = 0.0;
    return verdict;
}

RelayChain random_chain(std::mt19937_64& rng, TachyonMass m, int max_legs) {
    if (max_legs < 1) throw Error(ErrorCode::InvalidArgument, "max_legs must be >= 1");
    std::uniform_int_distribution<int> count(1, max_legs);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RelayChain chain;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        const Vec3 k = random_wavenumber(rng, m) * random_direction(rng);
        chain.legs.push_back({k, 1.0 - u(rng)});
    }
    return chain;
}

FourVector random_on_shell(std::mt19937_64& rng, TachyonMass m) {
    const Vec3 k = random_wavenumber(rng, m) * random_direction(rng);
    std::bernoulli_distribution sign(0.5);
    const double omega = std::sqrt(k.squaredNorm() - m.squared());
    return FourVector::from(sign(rng) ? omega : -omega, k);
}

nlohmann::json to_json(const RelayChain& chain) {
    nlohmann::json legs = nlohmann::json::array();
    for (const SignalLeg& leg : chain.legs)
        legs.push_back({{"kvec", {leg.kvec.x(), leg.kvec.y(), leg.kvec.z()}}, {"duration", leg.duration}});
    return {{"origin", four_vector_json(chain.origin)}, {"legs", std::move(legs)}};
}

RelayChain chain_from_json(const nlohmann::json& j) {
    try {
        RelayChain chain;
        const auto o = j.at("origin").get<std::array<double, 4>>();
        chain.origin = {o[0], o[1], o[2], o[3]};
        for (const auto& entry : j.at("legs")) {
            const auto k = entry.at("kvec").get<std::array<double, 3>>();
            chain.legs.push_back({Vec3(k[0], k[1], k[2]), entry.at("duration").get<double>()});
        }
        return chain;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed relay chain document: ") + e.what());
    }
}

}  // namespace tachyon
