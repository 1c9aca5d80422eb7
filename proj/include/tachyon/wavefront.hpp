#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/modes.hpp"
#include "tachyon/spacetime.hpp"

namespace tachyon {

enum class DecayClass { Rapid, Slow };
enum class ProbeTarget { Wightman, Symmetric };

const char* to_string(DecayClass c);
const char* to_string(ProbeTarget t);

/// Localized Fourier transform of a two-point function at base in the
/// covector direction dir:
///   F(R) = integral exp(i R <dir, xi>) exp(-|xi - base|^2 / (2 sigma^2)) G(xi) d^4xi
/// with the Minkowski pairing <.,.> and the Euclidean norm |.| in the window.
struct WavefrontProbe {
    FourVector base;
    FourVector direction;
    double window_sigma = 0.15;
    std::vector<double> radii{15.0, 18.0, 21.0, 24.0, 27.0, 30.0};
    /// Rapid decay means |F(R)| = O(R^-p) for every p <= max_power.
    int max_power = 4;
    ProbeTarget target = ProbeTarget::Wightman;
};

/// Numerical knobs of the k-space evaluation.
struct ProbeResolution {
    /// The window is cut where the Gaussian weight falls below exp(-cut^2 / 2).
    double window_cut = 9.0;
    /// Node density multiplier.
    double nodes_scale = 1.0;
    /// Agreement required between the base grid and a 1.5x refined grid.
    double refinement_tolerance = 1e-6;
    std::size_t max_nodes = 50'000'000;
};

/// value = mantissa * exp(log_scale); est_error is in units of exp(log_scale).
/// The split keeps exponentially small transforms representable.
struct WindowedValue {
    cd mantissa{0.0, 0.0};
    double log_scale = 0.0;
    double est_error = 0.0;

    double log_magnitude() const;
};

/// Continuum Wightman source. Throws InsufficientResolution when the refined
/// grid disagrees or the node budget is exceeded.
WindowedValue windowed_transform(const FourVector& base, const FourVector& dir, double sigma, double R, TachyonMass m,
                                 const ProbeResolution& res = {});

/// Box source: exact lattice sum of the same transform. Throws
/// InsufficientResolution when the window reaches beyond the lattice cutoff
/// or does not fit inside half the box.
WindowedValue windowed_transform(const FourVector& base, const FourVector& dir, double sigma, double R,
                                 const ModeSet& ms, const ProbeResolution& res = {});

struct DecayReport {
    std::vector<double> radii;
    std::vector<double> magnitudes;
    std::vector<double> log_magnitudes;
    std::vector<double> est_errors;
    double fitted_slope = 0.0;
    DecayClass decay = DecayClass::Slow;

    nlohmann::json to_json() const;
};

/// Least-squares slope of log|F| against log R, classified Rapid iff
/// slope <= -(max_power + 1).
DecayReport classify_decay(std::vector<double> radii, std::vector<WindowedValue> values, int max_power);

DecayReport wavefront_decay_probe(const WavefrontProbe& probe, TachyonMass m, const ProbeResolution& res = {});
DecayReport wavefront_decay_probe(const WavefrontProbe& probe, const ModeSet& ms, const ProbeResolution& res = {});

}  // namespace tachyon
