#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/spacetime.hpp"

namespace tachyon {

using cd = std::complex<double>;

/// Tachyonic mass parameter m > 0 of (box - m^2) u = 0.
class TachyonMass {
public:
    explicit TachyonMass(double m);
    double value() const { return m_; }
    double squared() const { return m_ * m_; }

private:
    double m_;
};

/// Oscillatory positive-frequency mode: |kvec| > m, omega = sqrt(|kvec|^2 - m^2).
/// lattice carries the integer label n when the mode comes from a box.
struct Mode {
    Vec3 kvec = Vec3::Zero();
    double omega = 0.0;
    std::array<int, 3> lattice{0, 0, 0};
};

/// omega_k = sqrt(|k|^2 - m^2). Throws ZeroModeExcluded for |k| == m (to a
/// relative 1e-14 band) and EvanescentModeExcluded for |k| < m.
double dispersion(const Vec3& kvec, TachyonMass m);

/// d omega / d k = k / omega_k; always faster than light.
Vec3 group_velocity(const Vec3& kvec, TachyonMass m);

Mode make_mode(const Vec3& kvec, TachyonMass m);

/// M_k = ((2 pi)^3 * 2 omega_k)^(-1/2)
double mode_normalization(const Mode& mode);

/// u_k(x) = M_k exp(-i (omega_k t - k.x))
cd mode_function(const Mode& mode, const FourVector& x);

/// Box-regularized mode continuum: every k = (2 pi / L) n with n in Z^3,
/// max|n_i| <= n_max and |k| > m. Immutable, closed under k -> -k.
class ModeSet {
public:
    /// Validates |k| > m for every mode, no duplicated lattice labels and
    /// closure under inversion. Throws EmptyModeSet when modes is empty.
    ModeSet(double box_length, int n_max, TachyonMass m, std::vector<Mode> modes);

    double box_length() const { return box_length_; }
    int n_max() const { return n_max_; }
    TachyonMass mass() const { return mass_; }
    /// d^3k cell volume (2 pi / L)^3.
    double measure() const { return measure_; }
    std::span<const Mode> modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    const Mode& operator[](std::size_t i) const { return modes_[i]; }

    std::optional<std::size_t> find(const std::array<int, 3>& lattice) const;

private:
    double box_length_;
    int n_max_;
    TachyonMass mass_;
    double measure_;
    std::vector<Mode> modes_;
};

ModeSet build_box_modes(double box_length, int n_max, TachyonMass m);

/// Copy of ms with every omega shifted by delta and nothing else changed.
/// Breaks the dispersion relation on purpose; used to show that the check
/// harness notices a wrong spectrum.
ModeSet with_frequency_shift(const ModeSet& ms, double delta);

/// Box version of delta_m(x) = (2 pi)^-3 * integral_{|k|>m} e^{ik.x} d^3k.
double delta_m_box(const Vec3& x, const ModeSet& ms);

/// Unit-mass isotropic Gaussian test function in three dimensions.
struct GaussianSmearing {
    Vec3 center = Vec3::Zero();
    double sigma = 1.0;

    double operator()(const Vec3& x) const;
    /// integral f(x) e^{i k.x} d^3x = e^{i k.c} e^{-sigma^2 |k|^2 / 2}
    cd fourier(const Vec3& k) const;
};

/// integral f(x) delta_m(x - y) g(y) d^3x d^3y over the box mode set.
double smeared_delta_m_box(const GaussianSmearing& f, const GaussianSmearing& g, const ModeSet& ms);

/// Uniform periodic grid of points_per_side^3 nodes on [0, L)^3.
struct PeriodicGrid {
    double box_length = 1.0;
    int points_per_side = 1;

    double spacing() const { return box_length / points_per_side; }
    double cell_volume() const;
    std::size_t size() const;
    Vec3 point(std::size_t flat_index) const;
};

/// Field and its time derivative sampled on a periodic grid at one time.
struct SampledField {
    PeriodicGrid grid;
    std::vector<cd> value;
    std::vector<cd> time_derivative;
};

/// u_k (or u_k^* when conjugate is set) and its exact time derivative at time t.
SampledField sample_mode(const Mode& mode, double t, const PeriodicGrid& grid, bool conjugate = false);

/// (f, g) = i * integral (f^* dt g - dt f^* g) d^3x by the periodic trapezoid
/// rule. Box modes are orthonormal in the discrete sense (u_k, u_l) =
/// delta_kl / measure once the grid has more than 2 n_max points per side.
/// Throws GridMismatch if f and g are sampled on different grids.
cd kg_inner_product(const SampledField& f, const SampledField& g);

// Schema: {"box_length", "n_max", "mass", "measure",
//          "modes": [{"n": [i,j,k], "kvec": [kx,ky,kz], "omega": w}, ...]}
nlohmann::json to_json(const ModeSet& ms);
ModeSet mode_set_from_json(const nlohmann::json& j);

}  // namespace tachyon
