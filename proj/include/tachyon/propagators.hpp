#pragma once

#include <complex>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/modes.hpp"
#include "tachyon/spacetime.hpp"

namespace tachyon {

/// Controls for the continuum radial integrals, which converge only in the
/// Abel sense. Each evaluation damps the integrand by e^{-eps omega} for every
/// eps on the ladder and extrapolates the results to eps = 0.
struct QuadratureSpec {
    /// Damping ladder as fractions of the light-cone gap ||t| - r| (|t| at
    /// r = 0); strictly decreasing and positive. The gap is the radius of
    /// analyticity of the damped integral in eps.
    std::vector<double> eps_damping{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    /// Hard wavenumber truncation (absolute units).
    double k_max = 1e6;
    /// Lower bound on the total number of quadrature nodes.
    int n_points = 200;
    /// Polynomial degree of the extrapolation; uses the extrapolation_order + 1
    /// smallest entries of eps_damping.
    int extrapolation_order = 5;
    /// Relative error above which an evaluation is reported NonConvergent.
    double tolerance = 1e-4;
    /// Half-width of the light-cone exclusion band, in units of 1/m.
    double light_cone_band = 0.05;

    static QuadratureSpec defaults(TachyonMass m);
    void validate(TachyonMass m) const;
    nlohmann::json to_json() const;
};

struct PropagatorValue {
    cd value{0.0, 0.0};
    double est_error = 0.0;
};

/// Source of the two-point function Delta+(x, y) = <0|phi(x) phi(y)|0>.
class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual PropagatorValue wightman(const FourVector& x, const FourVector& y) const = 0;
    virtual nlohmann::json describe() const = 0;
};

/// Exact finite mode sum over a box ModeSet.
class BoxEvaluator final : public Evaluator {
public:
    explicit BoxEvaluator(ModeSet modes) : modes_(std::move(modes)) {}
    PropagatorValue wightman(const FourVector& x, const FourVector& y) const override;
    nlohmann::json describe() const override;
    const ModeSet& modes() const { return modes_; }

private:
    ModeSet modes_;
};

/// Continuum evaluation through the angle-integrated radial form.
class RadialEvaluator final : public Evaluator {
public:
    RadialEvaluator(TachyonMass m, QuadratureSpec spec);
    PropagatorValue wightman(const FourVector& x, const FourVector& y) const override;
    nlohmann::json describe() const override;
    TachyonMass mass() const { return mass_; }
    const QuadratureSpec& spec() const { return spec_; }

private:
    TachyonMass mass_;
    QuadratureSpec spec_;
};

/// Preferred-frame Green's function seen from a boosted frame: the pullback
/// G(L^-1 x, L^-1 y). Holds a reference; base must outlive it.
class BoostedEvaluator final : public Evaluator {
public:
    BoostedEvaluator(const Evaluator& base, Boost boost) : base_(base), boost_(boost) {}
    PropagatorValue wightman(const FourVector& x, const FourVector& y) const override;
    nlohmann::json describe() const override;

private:
    const Evaluator& base_;
    Boost boost_;
};

/// sum_k measure * u_k(x) u_k^*(y) over the given modes.
cd wightman_mode_sum(const FourVector& x, const FourVector& y, std::span<const Mode> modes, double measure);

cd wightman_box(const FourVector& x, const FourVector& y, const ModeSet& ms);

/// Box sum with every mode damped by e^{-eps omega_k}, i.e. Delta+ at
/// complex time separation t - i eps.
cd wightman_box_damped(const FourVector& x, const FourVector& y, const ModeSet& ms, double eps);

/// Delta+(t, r) = (4 pi^2 r)^-1 * integral_m^inf dk k sin(kr) e^{-i omega t} / omega,
/// with the r -> 0 limit used at r = 0. Throws LightConeSingular inside the
/// exclusion band and NonConvergent when est_error exceeds the tolerance.
PropagatorValue wightman_radial(double t, double r, TachyonMass m, const QuadratureSpec& spec);

/// Same integral at one fixed absolute damping eps > 0 (no extrapolation);
/// est_error bounds the truncated tail.
PropagatorValue wightman_radial_damped(double t, double r, double eps, TachyonMass m, const QuadratureSpec& spec);

/// Pauli-Jordan function Delta(x, y) = 2 Im Delta+(x, y), returned as a
/// complex number with zero imaginary part. <0|[phi(x), phi(y)]|0> = i Delta.
PropagatorValue commutator(const FourVector& x, const FourVector& y, const Evaluator& source);

/// Delta^(1)(x, y) = 2 Re Delta+(x, y).
PropagatorValue symmetric_part(const FourVector& x, const FourVector& y, const Evaluator& source);

/// d/dt Delta(t, x; s, y) from the box sum, differentiated analytically in
/// the first time argument.
double commutator_box_dt(const FourVector& x, const FourVector& y, const ModeSet& ms);

/// Massless two-point function 1 / (4 pi^2 (r^2 - (t - i0)^2)) off the cone.
/// Throws LightConeSingular when ||t| - r| <= band.
cd massless_wightman(const FourVector& x, double band = 0.0);

PropagatorValue boosted_wightman(const FourVector& x, const FourVector& y, const Boost& b, const Evaluator& source);

/// |conj(Delta+(x)) - Delta+(-x)| with Delta+(x) = Delta+(x, 0).
double pct_residual(const FourVector& x, const Evaluator& source);

struct ScalingPoint {
    double lambda = 0.0;
    /// |lambda^2 Delta+(lambda x) - Delta0+(x)| / |Delta0+(x)|
    double relative_error = 0.0;
    /// quadrature error of lambda^2 Delta+(lambda x), relative to |Delta0+(x)|
    double est_error = 0.0;
};

std::vector<ScalingPoint> scaling_limit_curve(const FourVector& x, std::span<const double> lambdas, TachyonMass m,
                                              const QuadratureSpec& spec);

/// integral f(x) g(y) d_tx^a d_ty^b Delta+((tx, x), (ty, y)) d^3x d^3y, box sum.
cd smeared_wightman_box(const GaussianSmearing& f, double tx, int dtx, const GaussianSmearing& g, double ty, int dty,
                        const ModeSet& ms);

/// <0|[phi(f, t), phi(g, t)]|0>
cd smeared_equal_time_commutator(const GaussianSmearing& f, const GaussianSmearing& g, double t, const ModeSet& ms);

/// <0|[phi(f, t), pi(g, t)]|0>, expected to equal i (f, delta_m * g).
cd smeared_field_momentum_commutator(const GaussianSmearing& f, const GaussianSmearing& g, double t,
                                     const ModeSet& ms);

/// Centered second-order finite-difference (box - m^2) applied to the box
/// Delta+(x, 0), step h in every coordinate.
cd klein_gordon_residual_box(const FourVector& x, const ModeSet& ms, double h);

}  // namespace tachyon
