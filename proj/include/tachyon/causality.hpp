#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/modes.hpp"
#include "tachyon/spacetime.hpp"

namespace tachyon {

/// Support of the vacuum spectrum seen by an observer moving with velocity
/// beta along z relative to the preferred frame: on-shell momenta with
/// k^0 + beta k^z > 0.
class SpectrumCut {
public:
    SpectrumCut(TachyonMass m, double beta);

    TachyonMass mass() const { return m_; }
    double beta() const { return beta_; }
    /// 1e-9 m^2
    double default_tolerance() const { return 1e-9 * m_.squared(); }
    /// Coordinates of that observer: boost_apply(frame(), k) maps preferred
    /// momenta into the frame where this cut applies.
    Boost frame() const { return Boost::along_z(beta_); }

private:
    TachyonMass m_;
    double beta_;
};

/// |minkowski_square(k4) + m^2| <= tol and k^0 + beta k^z > 0.
bool spectrum_allowed(const FourVector& k4, const SpectrumCut& cut, double tol);
bool spectrum_allowed(const FourVector& k4, const SpectrumCut& cut);

/// True iff exactly one of k4, -k4 is allowed. Throws InvalidArgument off
/// shell and OnCutPlane when |k^0 + beta k^z| <= tol.
bool halving_consistency(const FourVector& k4, const SpectrumCut& cut, double tol);
bool halving_consistency(const FourVector& k4, const SpectrumCut& cut);

/// Sharp wave packet with carrier kvec travelling for `duration` of
/// preferred-frame time at the group velocity.
struct SignalLeg {
    Vec3 kvec = Vec3::UnitX();
    double duration = 1.0;
};

struct RelayChain {
    FourVector origin;
    std::vector<SignalLeg> legs;
};

/// (duration, duration * k / omega_k). Throws SpectrumForbiddenLeg for
/// duration <= 0 and the dispersion errors for |k| <= m.
FourVector leg_displacement(const SignalLeg& leg, TachyonMass m);

/// Time component of the leg displacement in the frame reached by b.
double leg_time_in_frame(const SignalLeg& leg, const Boost& b, TachyonMass m);

struct ChainVerdict {
    bool violation = false;
    FourVector final_event;
    double total_dt = 0.0;
    /// final_event - origin
    IntervalClass net_interval = IntervalClass::Null;
    /// Smallest elapsed time of any single leg over the inspected frames;
    /// negative values mean that leg runs backward in some frame.
    double min_leg_time_in_frames = 0.0;
    std::size_t frames_checked = 0;

    nlohmann::json to_json() const;
};

/// Walks the chain head to tail. violation is set when the final event lies
/// in the timelike past of the origin in the preferred frame or in any of
/// the extra observer frames.
ChainVerdict antitelephone_check(const RelayChain& chain, TachyonMass m, std::span<const Boost> frames = {});

/// Legs with |k| uniform in (m, 10 m], isotropic direction, duration uniform
/// in (0, 1]; leg count uniform in [1, max_legs].
RelayChain random_chain(std::mt19937_64& rng, TachyonMass m, int max_legs);

/// On-shell 4-momentum with |k| uniform in (m, 10 m], isotropic direction
/// and either sign of k^0.
FourVector random_on_shell(std::mt19937_64& rng, TachyonMass m);

// Schema: {"origin": [t, x, y, z], "legs": [{"kvec": [kx, ky, kz], "duration": d}, ...]}
nlohmann::json to_json(const RelayChain& chain);
RelayChain chain_from_json(const nlohmann::json& j);

}  // namespace tachyon
