#include "tachyon/modes.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "tachyon/error.hpp"

namespace tachyon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwoPiCubed = kTwoPi * kTwoPi * kTwoPi;
// |k|^2 - m^2 within this fraction of m^2 counts as a zero mode.
constexpr double kZeroModeBand = 1e-13;

std::array<int, 3> negated(const std::array<int, 3>& n) { return {-n[0], -n[1], -n[2]}; }

}  // namespace

TachyonMass::TachyonMass(double m) : m_(m) {
    if (!std::isfinite(m) || m <= 0.0) throw Error(ErrorCode::InvalidArgument, "tachyon mass must be finite and > 0");
}

double dispersion(const Vec3& kvec, TachyonMass m) {
    const double d = kvec.squaredNorm() - m.squared();
    if (!std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "non-finite wavevector");
    if (std::abs(d) <= kZeroModeBand * m.squared())
        throw Error(ErrorCode::ZeroModeExcluded, "|k| = m has zero frequency and is excluded");
    if (d < 0.0) throw Error(ErrorCode::EvanescentModeExcluded, "|k| < m modes grow or decay in time and are excluded");
    return std::sqrt(d);
}

Vec3 group_velocity(const Vec3& kvec, TachyonMass m) { return kvec / dispersion(kvec, m); }

Mode make_mode(const Vec3& kvec, TachyonMass m) { return Mode{kvec, dispersion(kvec, m), {0, 0, 0}}; }

double mode_normalization(const Mode& mode) { return 1.0 / std::sqrt(kTwoPiCubed * 2.0 * mode.omega); }

cd mode_function(const Mode& mode, const FourVector& x) {
    const double phase = mode.omega * x.t - mode.kvec.dot(x.spatial());
    return mode_normalization(mode) * std::polar(1.0, -phase);
}

ModeSet::ModeSet(double box_length, int n_max, TachyonMass m, std::vector<Mode> modes)
    : box_length_(box_length), n_max_(n_max), mass_(m), measure_(0.0), modes_(std::move(modes)) {
    if (!std::isfinite(box_length) || box_length <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "box length must be finite and > 0");
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    if (modes_.empty()) throw Error(ErrorCode::EmptyModeSet, "no lattice wavevector satisfies |k| > m");
    const double dk = kTwoPi / box_length;
    measure_ = dk * dk * dk;

    std::set<std::array<int, 3>> seen;
    for (const Mode& mode : modes_) {
        const auto& n = mode.lattice;
        if (std::abs(n[0]) > n_max || std::abs(n[1]) > n_max || std::abs(n[2]) > n_max)
            throw Error(ErrorCode::InvalidMode, "lattice label outside the n_max block");
        const Vec3 expected = dk * Vec3(n[0], n[1], n[2]);
        if ((mode.kvec - expected).norm() > 1e-12 * (1.0 + expected.norm()))
            throw Error(ErrorCode::InvalidMode, "wavevector does not match its lattice label");
        if (mode.kvec.squaredNorm() <= m.squared()) throw Error(ErrorCode::InvalidMode, "mode with |k| <= m in mode set");
        if (!seen.insert(n).second) throw Error(ErrorCode::InvalidMode, "duplicate lattice point in mode set");
    }
    for (const auto& n : seen)
        if (!seen.contains(negated(n))) throw Error(ErrorCode::InvalidMode, "mode set is not closed under k -> -k");
}

std::optional<std::size_t> ModeSet::find(const std::array<int, 3>& lattice) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (modes_[i].lattice == lattice) return i;
    return std::nullopt;
}

ModeSet build_box_modes(double box_length, int n_max, TachyonMass m) {
    if (!std::isfinite(box_length) || box_length <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "box length must be finite and > 0");
    if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
    const double dk = kTwoPi / box_length;
    std::vector<Mode> modes;
    for (int i = -n_max; i <= n_max; ++i) {
        for (int j = -n_max; j <= n_max; ++j) {
            for (int l = -n_max; l <= n_max; ++l) {
                const Vec3 k = dk * Vec3(i, j, l);
                const double d = k.squaredNorm() - m.squared();
                if (d <= kZeroModeBand * m.squared()) continue;
                modes.push_back(Mode{k, std::sqrt(d), {i, j, l}});
            }
        }
    }
    return ModeSet(box_length, n_max, m, std::move(modes));
}

ModeSet with_frequency_shift(const ModeSet& ms, double delta) {
    std::vector<Mode> modes(ms.modes().begin(), ms.modes().end());
    for (Mode& mode : modes) mode.omega += delta;
    return ModeSet(ms.box_length(), ms.n_max(), ms.mass(), std::move(modes));
}

double delta_m_box(const Vec3& x, const ModeSet& ms) {
    double sum = 0.0;
    for (const Mode& mode : ms.modes()) sum += std::cos(mode.kvec.dot(x));
    return ms.measure() / kTwoPiCubed * sum;
}

double GaussianSmearing::operator()(const Vec3& x) const {
    const double s2 = sigma * sigma;
    return std::exp(-(x - center).squaredNorm() / (2.0 * s2)) / std::pow(kTwoPi * s2, 1.5);
}

cd GaussianSmearing::fourier(const Vec3& k) const {
    return std::polar(std::exp(-0.5 * sigma * sigma * k.squaredNorm()), k.dot(center));
}

double smeared_delta_m_box(const GaussianSmearing& f, const GaussianSmearing& g, const ModeSet& ms) {
    cd sum = 0.0;
    for (const Mode& mode : ms.modes()) sum += f.fourier(mode.kvec) * g.fourier(-mode.kvec);
    return ms.measure() / kTwoPiCubed * sum.real();
}

double PeriodicGrid::cell_volume() const {
    const double h = spacing();
    return h * h * h;
}

std::size_t PeriodicGrid::size() const {
    const auto n = static_cast<std::size_t>(points_per_side);
    return n * n * n;
}

Vec3 PeriodicGrid::point(std::size_t flat_index) const {
    const auto n = static_cast<std::size_t>(points_per_side);
    const double h = spacing();
    return h * Vec3(static_cast<double>(flat_index / (n * n)), static_cast<double>((flat_index / n) % n),
                    static_cast<double>(flat_index % n));
}

SampledField sample_mode(const Mode& mode, double t, const PeriodicGrid& grid, bool conjugate) {
    if (grid.points_per_side < 1 || !(grid.box_length > 0.0))
        throw Error(ErrorCode::InvalidArgument, "periodic grid needs points and a positive box length");
    SampledField field{grid, {}, {}};
    field.value.reserve(grid.size());
    field.time_derivative.reserve(grid.size());
    const cd rate = conjugate ? cd(0.0, mode.omega) : cd(0.0, -mode.omega);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cd u = mode_function(mode, FourVector::from(t, grid.point(i)));
        if (conjugate) u = std::conj(u);
        field.value.push_back(u);
        field.time_derivative.push_back(rate * u);
    }
    return field;
}

cd kg_inner_product(const SampledField& f, const SampledField& g) {
    const bool same_grid = f.grid.points_per_side == g.grid.points_per_side &&
                           std::abs(f.grid.box_length - g.grid.box_length) <= 1e-12 * f.grid.box_length;
    if (!same_grid || f.value.size() != g.value.size() || f.value.size() != f.grid.size() ||
        f.time_derivative.size() != f.value.size() || g.time_derivative.size() != g.value.size())
        throw Error(ErrorCode::GridMismatch, "inner product needs both fields on the same periodic grid");
    cd sum = 0.0;
    for (std::size_t i = 0; i < f.value.size(); ++i)
        sum += std::conj(f.value[i]) * g.time_derivative[i] - std::conj(f.time_derivative[i]) * g.value[i];
    return cd(0.0, 1.0) * sum * f.grid.cell_volume();
}

nlohmann::json to_json(const ModeSet& ms) {
    nlohmann::json modes = nlohmann::json::array();
    for (const Mode& mode : ms.modes()) {
        modes.push_back({{"n", mode.lattice},
                         {"kvec", {mode.kvec.x(), mode.kvec.y(), mode.kvec.z()}},
                         {"omega", mode.omega}});
    }
    return {{"box_length", ms.box_length()},
            {"n_max", ms.n_max()},
            {"mass", ms.mass().value()},
            {"measure", ms.measure()},
            {"modes", std::move(modes)}};
}

ModeSet mode_set_from_json(const nlohmann::json& j) {
    try {
        const TachyonMass m(j.at("mass").get<double>());
        std::vector<Mode> modes;
        for (const auto& entry : j.at("modes")) {
            const auto k = entry.at("kvec").get<std::array<double, 3>>();
            Mode mode{Vec3(k[0], k[1], k[2]), entry.at("omega").get<double>(), entry.at("n").get<std::array<int, 3>>()};
            modes.push_back(mode);
        }
        return ModeSet(j.at("box_length").get<double>(), j.at("n_max").get<int>(), m, std::move(modes));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed mode set document: ") + e.what());
    }
}

}  // namespace tachyon
