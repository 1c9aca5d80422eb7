#include "tachyon/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tachyon/error.hpp"

namespace tachyon {

namespace {

constexpr double kTwoPiCubed = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

using Triplet = Eigen::Triplet<cd>;

// All occupation vectors over `slots` with the given total, first slot
// descending, then recursively.
void compositions(std::size_t slot, int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    if (slot + 1 == current.size()) {
        current[slot] = remaining;
        out.push_back(current);
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        current[slot] = n;
        compositions(slot + 1, remaining - n, current, out);
    }
    current[slot] = 0;
}

std::size_t slot_of(const FockSpace& fs, std::size_t mode, Species species) {
    if (mode >= fs.mode_count()) throw Error(ErrorCode::InvalidMode, "mode index outside the Fock space");
    if (species == Species::B && !fs.charged())
        throw Error(ErrorCode::SpeciesUnavailable, "species b exists only in a charged Fock space");
    return fs.charged() ? 2 * mode + (species == Species::B ? 1 : 0) : mode;
}

OperatorMatrix::Sparse from_triplets(std::size_t dim, const std::vector<Triplet>& triplets) {
    const auto n = static_cast<Eigen::Index>(dim);
    OperatorMatrix::Sparse m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

// Diagonal operator sum_slots weight(slot) * N_slot.
OperatorMatrix number_weighted(const FockSpace& fs, const std::vector<double>& weight) {
    std::vector<Triplet> triplets;
    for (std::size_t s = 0; s < fs.dimension(); ++s) {
        const auto occ = fs.occupation(s);
        double v = 0.0;
        for (std::size_t i = 0; i < occ.size(); ++i) v += weight[i] * occ[i];
        if (v != 0.0) triplets.emplace_back(static_cast<int>(s), static_cast<int>(s), v);
    }
    return OperatorMatrix(from_triplets(fs.dimension(), triplets));
}

// Species that the creation part of phi creates: a for neutral fields, b for charged.
Species partner(const FockSpace& fs) { return fs.charged() ? Species::B : Species::A; }

// sum_k (alpha_k a_k + beta_k c_k^dag)
OperatorMatrix linear_in_ladders(const FockSpace& fs, const std::vector<cd>& alpha, const std::vector<cd>& beta) {
    OperatorMatrix out = OperatorMatrix::zero(fs.dimension());
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        out = out + alpha[k] * ladder(fs, k, LadderKind::Annihilate, Species::A);
        out = out + beta[k] * ladder(fs, k, LadderKind::Create, partner(fs));
    }
    return out;
}

}  // namespace

std::size_t fock_dimension(std::size_t slots, int n_max_total) {
    // C(slots + n, n), evaluated incrementally; saturates on overflow.
    double d = 1.0;
    for (int i = 1; i <= n_max_total; ++i) d = d * static_cast<double>(slots + static_cast<std::size_t>(i)) / i;
    return d > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(std::llround(d));
}

FockSpace::FockSpace(const ModeSet& ms, std::vector<std::size_t> mode_indices, int n_max_total, bool charged,
                     std::size_t dimension_cap)
    : indices_(std::move(mode_indices)),
      measure_(ms.measure()),
      box_length_(ms.box_length()),
      mass_(ms.mass()),
      n_max_total_(n_max_total),
      charged_(charged) {
    if (indices_.empty() || indices_.size() > kMaxModes)
        throw Error(ErrorCode::InvalidArgument, "Fock space needs between 1 and 64 modes");
    if (n_max_total < 1) throw Error(ErrorCode::InvalidArgument, "n_max_total must be >= 1");
    std::set<std::size_t> seen;
    for (std::size_t i : indices_) {
        if (i >= ms.size()) throw Error(ErrorCode::InvalidMode, "mode index outside the mode set");
        if (!seen.insert(i).second) throw Error(ErrorCode::InvalidMode, "mode listed twice");
        modes_.push_back(ms[i]);
    }
    if (fock_dimension(slots(), n_max_total) > dimension_cap)
        throw Error(ErrorCode::DimensionOverflow, "Fock basis exceeds the dimension cap");

    std::vector<int> current(slots(), 0);
    for (int total = 0; total <= n_max_total; ++total) compositions(0, total, current, basis_);
    for (std::size_t i = 0; i < basis_.size(); ++i) lookup_.emplace(basis_[i], i);
}

int FockSpace::total_occupation(std::size_t state) const {
    const auto occ = occupation(state);
    int total = 0;
    for (int n : occ) total += n;
    return total;
}

std::size_t FockSpace::index_of(const std::vector<int>& occupation) const {
    const auto it = lookup_.find(occupation);
    return it == lookup_.end() ? dimension() : it->second;
}

OperatorMatrix OperatorMatrix::zero(std::size_t dim) { return OperatorMatrix(from_triplets(dim, {})); }

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i < dim; ++i) triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), 1.0);
    return OperatorMatrix(from_triplets(dim, triplets));
}

double OperatorMatrix::max_abs() const {
    double best = 0.0;
    for (int k = 0; k < m_.outerSize(); ++k)
        for (Sparse::InnerIterator it(m_, k); it; ++it) best = std::max(best, std::abs(it.value()));
    return best;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) { return OperatorMatrix(a.m_ + b.m_); }
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) { return OperatorMatrix(a.m_ - b.m_); }
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    return OperatorMatrix(OperatorMatrix::Sparse(a.m_ * b.m_));
}
OperatorMatrix operator*(cd s, const OperatorMatrix& a) { return OperatorMatrix(a.m_ * s); }

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

cd vacuum_expectation(const OperatorMatrix& a, const OperatorMatrix& b) {
    const Eigen::VectorXcd b0 = b.sparse().col(0);
    const Eigen::VectorXcd ab0 = a.sparse() * b0;
    return ab0(0);
}

OperatorMatrix ladder(const FockSpace& fs, std::size_t mode, LadderKind kind, Species species) {
    const std::size_t slot = slot_of(fs, mode, species);
    std::vector<Triplet> triplets;
    for (std::size_t j = 0; j < fs.dimension(); ++j) {
        const auto occ = fs.occupation(j);
        if (occ[slot] == 0) continue;
        std::vector<int> lowered(occ.begin(), occ.end());
        --lowered[slot];
        const std::size_t i = fs.index_of(lowered);
        const double amplitude = std::sqrt(static_cast<double>(occ[slot]));
        if (kind == LadderKind::Annihilate)
            triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), amplitude);
        else
            triplets.emplace_back(static_cast<int>(j), static_cast<int>(i), amplitude);
    }
    return OperatorMatrix(from_triplets(fs.dimension(), triplets));
}

OperatorMatrix field_operator(const FockSpace& fs, const FourVector& x) {
    const double root = std::sqrt(fs.measure());
    std::vector<cd> alpha, beta;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        const cd u = mode_function(fs.mode(k), x);
        alpha.push_back(root * u);
        beta.push_back(root * std::conj(u));
    }
    return linear_in_ladders(fs, alpha, beta);
}

OperatorMatrix conjugate_momentum(const FockSpace& fs, const FourVector& x) {
    const double root = std::sqrt(fs.measure());
    std::vector<cd> alpha, beta;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        const cd u = mode_function(fs.mode(k), x);
        const cd rate(0.0, -fs.mode(k).omega);
        alpha.push_back(root * rate * u);
        beta.push_back(-root * rate * std::conj(u));
    }
    return linear_in_ladders(fs, alpha, beta);
}

namespace {

// integral f(x) u_k(t, x) d^3x and integral f(x) u_k^*(t, x) d^3x
std::pair<cd, cd> smeared_mode(const Mode& mode, const GaussianSmearing& f, double t) {
    const double norm = mode_normalization(mode);
    return {norm * std::polar(1.0, -mode.omega * t) * f.fourier(mode.kvec),
            norm * std::polar(1.0, mode.omega * t) * f.fourier(-mode.kvec)};
}

}  // namespace

OperatorMatrix smeared_field(const FockSpace& fs, const GaussianSmearing& f, double t) {
    const double root = std::sqrt(fs.measure());
    std::vector<cd> alpha, beta;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        const auto [pos, neg] = smeared_mode(fs.mode(k), f, t);
        alpha.push_back(root * pos);
        beta.push_back(root * neg);
    }
    return linear_in_ladders(fs, alpha, beta);
}

OperatorMatrix smeared_momentum(const FockSpace& fs, const GaussianSmearing& f, double t) {
    const double root = std::sqrt(fs.measure());
    std::vector<cd> alpha, beta;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        const auto [pos, neg] = smeared_mode(fs.mode(k), f, t);
        const cd rate(0.0, -fs.mode(k).omega);
        alpha.push_back(root * rate * pos);
        beta.push_back(-root * rate * neg);
    }
    return linear_in_ladders(fs, alpha, beta);
}

cd etcr_expected(const FockSpace& fs, const GaussianSmearing& f, const GaussianSmearing& g) {
    if (fs.charged()) throw Error(ErrorCode::InvalidArgument, "the phi-pi commutator is defined here for neutral fields");
    cd sum = 0.0;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        const Vec3& kv = fs.mode(k).kvec;
        sum += 0.5 * (f.fourier(kv) * g.fourier(-kv) + f.fourier(-kv) * g.fourier(kv));
    }
    return cd(0.0, 1.0) * fs.measure() / kTwoPiCubed * sum;
}

OperatorMatrix hamiltonian_op(const FockSpace& fs) {
    std::vector<double> weight;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        weight.push_back(fs.mode(k).omega);
        if (fs.charged()) weight.push_back(fs.mode(k).omega);
    }
    return number_weighted(fs, weight);
}

std::array<OperatorMatrix, 3> momentum_op(const FockSpace& fs) {
    auto component = [&](int axis) {
        std::vector<double> weight;
        for (std::size_t k = 0; k < fs.mode_count(); ++k) {
            weight.push_back(fs.mode(k).kvec[axis]);
            if (fs.charged()) weight.push_back(fs.mode(k).kvec[axis]);
        }
        return number_weighted(fs, weight);
    };
    return {component(0), component(1), component(2)};
}

OperatorMatrix charge_op(const FockSpace& fs, double q) {
    if (!fs.charged()) throw Error(ErrorCode::NotCharged, "charge operator needs a charged Fock space");
    std::vector<double> weight;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        weight.push_back(-q);
        weight.push_back(q);
    }
    return number_weighted(fs, weight);
}

OperatorMatrix grid_hamiltonian(const FockSpace& fs, const PeriodicGrid& grid, double t) {
    if (fs.charged()) throw Error(ErrorCode::InvalidArgument, "grid Hamiltonian is assembled for neutral fields");
    if (std::abs(grid.box_length - fs.box_length()) > 1e-12 * fs.box_length() || grid.points_per_side < 1)
        throw Error(ErrorCode::GridMismatch, "grid box differs from the mode box");

    const std::size_t n = fs.mode_count();
    const double root = std::sqrt(fs.measure());
    const double m2 = fs.mass().squared();
    const double dv = grid.cell_volume();
    // Per mode: phi coefficient alpha, pi coefficient -i omega alpha, gradient i k alpha.
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::MatrixXcd B = A;
    std::vector<cd> alpha(n);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const FourVector x = FourVector::from(t, grid.point(p));
        for (std::size_t k = 0; k < n; ++k) alpha[k] = root * mode_function(fs.mode(k), x);
        for (std::size_t k = 0; k < n; ++k) {
            const Mode& mk = fs.mode(k);
            const cd pk = cd(0.0, -mk.omega) * alpha[k];
            for (std::size_t l = 0; l < n; ++l) {
                const Mode& ml = fs.mode(l);
                const cd pl = cd(0.0, -ml.omega) * alpha[l];
                // grad alpha_k . grad alpha_l = -(k.l) alpha_k alpha_l; with conjugate: +(k.l)
                const double kl = mk.kvec.dot(ml.kvec);
                const auto ik = static_cast<Eigen::Index>(k), il = static_cast<Eigen::Index>(l);
                A(ik, il) += dv * (pk * pl - kl * alpha[k] * alpha[l] - m2 * alpha[k] * alpha[l]);
                B(ik, il) += dv * (std::conj(pk) * pl + kl * std::conj(alpha[k]) * alpha[l] -
                                   m2 * std::conj(alpha[k]) * alpha[l]);
            }
        }
    }

    std::vector<OperatorMatrix> down, up;
    for (std::size_t k = 0; k < n; ++k) {
        down.push_back(ladder(fs, k, LadderKind::Annihilate));
        up.push_back(ladder(fs, k, LadderKind::Create));
    }
    OperatorMatrix h = OperatorMatrix::zero(fs.dimension());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            const auto ik = static_cast<Eigen::Index>(k), il = static_cast<Eigen::Index>(l);
            h = h + (0.5 * A(ik, il)) * (down[k] * down[l]);
            h = h + (0.5 * std::conj(A(ik, il))) * (up[k] * up[l]);
            h = h + B(ik, il) * (up[k] * down[l]);
        }
    }
    return h;
}

nlohmann::json CcrReport::to_json() const {
    return {{"interior_states", interior_states},
            {"boundary_states", boundary_states},
            {"interior_residual", interior_residual},
            {"boundary_residual", boundary_residual}};
}

CcrReport ccr_report(const FockSpace& fs) {
    CcrReport report;
    std::vector<bool> interior(fs.dimension());
    for (std::size_t s = 0; s < fs.dimension(); ++s) {
        interior[s] = fs.total_occupation(s) < fs.n_max_total();
        ++(interior[s] ? report.interior_states : report.boundary_states);
    }
    std::vector<OperatorMatrix> down, up;
    for (std::size_t k = 0; k < fs.mode_count(); ++k) {
        down.push_back(ladder(fs, k, LadderKind::Annihilate, Species::A));
        up.push_back(ladder(fs, k, LadderKind::Create, Species::A));
        if (fs.charged()) {
            down.push_back(ladder(fs, k, LadderKind::Annihilate, Species::B));
            up.push_back(ladder(fs, k, LadderKind::Create, Species::B));
        }
    }
    const OperatorMatrix id = OperatorMatrix::identity(fs.dimension());
    const OperatorMatrix zero = OperatorMatrix::zero(fs.dimension());
    auto accumulate = [&](const OperatorMatrix& residual) {
        const auto& m = residual.sparse();
        for (int col = 0; col < m.outerSize(); ++col) {
            double& target = interior[static_cast<std::size_t>(col)] ? report.interior_residual : report.boundary_residual;
            for (OperatorMatrix::Sparse::InnerIterator it(m, col); it; ++it) target = std::max(target, std::abs(it.value()));
        }
    };
    for (std::size_t i = 0; i < down.size(); ++i) {
        for (std::size_t j = 0; j < down.size(); ++j) {
            accumulate(commutator(down[i], up[j]) - (i == j ? id : zero));
            accumulate(commutator(down[i], down[j]));
            accumulate(commutator(up[i], up[j]));
        }
    }
    return report;
}

std::vector<double> hamiltonian_spectrum(const FockSpace& fs) {
    const OperatorMatrix h = hamiltonian_op(fs);
    std::vector<double> out;
    for (std::size_t s = 0; s < fs.dimension(); ++s) out.push_back(h.element(s, s).real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tachyon
