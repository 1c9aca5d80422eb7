#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

#include "tachyon/modes.hpp"

namespace tachyon {

enum class LadderKind { Annihilate, Create };
enum class Species { A, B };

/// Truncated occupation-number space over a subset of box modes.
///
/// Ladder operators are Kronecker normalized, [a_k, a_l^dag] = delta_kl.
/// The d^3k measure enters the fields as sqrt(measure) per mode, which makes
/// the normal-ordered field energy sum_k omega_k a_k^dag a_k without any
/// further measure factor (likewise for momentum and charge).
///
/// States are occupation vectors over slots; a charged space has two slots
/// per mode (species a at 2i, b at 2i+1). The basis is ordered by total
/// occupation, then lexicographically descending, so the vacuum is index 0.
class FockSpace {
public:
    static constexpr std::size_t kDefaultDimensionCap = 200'000;
    static constexpr std::size_t kMaxModes = 64;

    /// Uses ms[i] for every i in mode_indices, in that order. Throws
    /// InvalidMode for a bad or repeated index and DimensionOverflow when the
    /// basis would exceed dimension_cap.
    FockSpace(const ModeSet& ms, std::vector<std::size_t> mode_indices, int n_max_total, bool charged,
              std::size_t dimension_cap = kDefaultDimensionCap);

    std::size_t mode_count() const { return modes_.size(); }
    const Mode& mode(std::size_t i) const { return modes_.at(i); }
    std::span<const std::size_t> mode_indices() const { return indices_; }
    double measure() const { return measure_; }
    double box_length() const { return box_length_; }
    TachyonMass mass() const { return mass_; }
    int n_max_total() const { return n_max_total_; }
    bool charged() const { return charged_; }
    std::size_t slots() const { return charged_ ? 2 * modes_.size() : modes_.size(); }
    std::size_t dimension() const { return basis_.size(); }

    std::span<const int> occupation(std::size_t state) const { return basis_.at(state); }
    int total_occupation(std::size_t state) const;
    /// Index of an occupation vector, or dimension() when it is truncated away.
    std::size_t index_of(const std::vector<int>& occupation) const;

private:
    std::vector<Mode> modes_;
    std::vector<std::size_t> indices_;
    double measure_;
    double box_length_;
    TachyonMass mass_;
    int n_max_total_;
    bool charged_;
    std::vector<std::vector<int>> basis_;
    std::map<std::vector<int>, std::size_t> lookup_;
};

/// Number of occupation vectors over `slots` slots with total <= n_max_total.
std::size_t fock_dimension(std::size_t slots, int n_max_total);

/// Sparse complex operator on a FockSpace basis.
class OperatorMatrix {
public:
    using Sparse = Eigen::SparseMatrix<cd>;

    explicit OperatorMatrix(Sparse m) : m_(std::move(m)) {}
    static OperatorMatrix zero(std::size_t dim);
    static OperatorMatrix identity(std::size_t dim);

    std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
    const Sparse& sparse() const { return m_; }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }
    cd element(std::size_t row, std::size_t col) const { return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)); }
    OperatorMatrix adjoint() const { return OperatorMatrix(Sparse(m_.adjoint())); }
    /// Largest |element|.
    double max_abs() const;

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(cd s, const OperatorMatrix& a);

private:
    Sparse m_;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// <0| A B |0>
cd vacuum_expectation(const OperatorMatrix& a, const OperatorMatrix& b);

/// a_k (or a_k^dag) for species a or b. Throws InvalidMode and
/// SpeciesUnavailable (species b on an uncharged space).
OperatorMatrix ladder(const FockSpace& fs, std::size_t mode, LadderKind kind, Species species = Species::A);

/// phi(x) = sum_k sqrt(measure) (a_k u_k(x) + c_k^dag u_k^*(x)), c = a for an
/// uncharged space and c = b for a charged one.
OperatorMatrix field_operator(const FockSpace& fs, const FourVector& x);

/// pi(x) = d_t phi(x) = sum_k sqrt(measure) (-i omega_k) (a_k u_k(x) - c_k^dag u_k^*(x)).
OperatorMatrix conjugate_momentum(const FockSpace& fs, const FourVector& x);

/// phi and pi integrated against a Gaussian at time t.
OperatorMatrix smeared_field(const FockSpace& fs, const GaussianSmearing& f, double t);
OperatorMatrix smeared_momentum(const FockSpace& fs, const GaussianSmearing& f, double t);

/// i (f, delta_m g) restricted to the modes of fs, the c-number expected for
/// [phi(f, t), pi(g, t)] on the interior subspace.
cd etcr_expected(const FockSpace& fs, const GaussianSmearing& f, const GaussianSmearing& g);

/// sum_k omega_k (N_a,k + N_b,k), diagonal.
OperatorMatrix hamiltonian_op(const FockSpace& fs);
/// sum_k k_i (N_a,k + N_b,k) for i = x, y, z.
std::array<OperatorMatrix, 3> momentum_op(const FockSpace& fs);
/// q sum_k (N_b,k - N_a,k). Throws NotCharged on an uncharged space.
OperatorMatrix charge_op(const FockSpace& fs, double q);

/// Normal-ordered 1/2 sum_grid (pi^2 + |grad phi|^2 - m^2 phi^2) dV at time t,
/// built from field mode coefficients sampled on the grid (uncharged spaces).
/// Throws GridMismatch when the grid box differs from the mode box and
/// InvalidArgument for a charged space.
OperatorMatrix grid_hamiltonian(const FockSpace& fs, const PeriodicGrid& grid, double t);

struct CcrReport {
    std::size_t interior_states = 0;
    std::size_t boundary_states = 0;
    /// max over slot pairs and columns of the residuals of
    /// [a_i, a_j^dag] - delta_ij, [a_i, a_j] and [a_i^dag, a_j^dag]
    double interior_residual = 0.0;
    double boundary_residual = 0.0;

    nlohmann::json to_json() const;
};

/// Interior: total occupation <= n_max_total - 1. Boundary: the top shell.
CcrReport ccr_report(const FockSpace& fs);

/// Sorted diagonal of hamiltonian_op.
std::vector<double> hamiltonian_spectrum(const FockSpace& fs);

}  // namespace tachyon
