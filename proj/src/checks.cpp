#include "tachyon/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "tachyon/causality.hpp"
#include "tachyon/error.hpp"
#include "tachyon/fock.hpp"
#include "tachyon/parallel.hpp"
#include "tachyon/wavefront.hpp"

namespace tachyon {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
public:
    explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

    void add(const std::string& name, double residual, double tolerance, bool passed, std::string detail = {}) {
        out_.push_back({suite_, name, passed, residual, tolerance, std::move(detail)});
    }
    // Residual must not exceed tolerance.
    void bound(const std::string& name, double residual, double tolerance, std::string detail = {}) {
        add(name, residual, tolerance, residual <= tolerance, std::move(detail));
    }
    // Runs body; module errors become a failed check of that name.
    void guard(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(name, std::nan(""), 0.0, false, std::string("error: ") + e.what());
        }
    }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::string suite_;
    std::vector<CheckResult> out_;
};

GaussianSmearing random_gaussian(std::mt19937_64& rng, double box, TachyonMass m) {
    std::uniform_real_distribution<double> pos(0.0, box);
    std::uniform_real_distribution<double> width(0.6, 1.4);
    return {Vec3(pos(rng), pos(rng), pos(rng)), width(rng) / m.value()};
}

FourVector random_point(std::mt19937_64& rng, double extent) {
    std::uniform_real_distribution<double> u(-extent, extent);
    const double t = u(rng), x = u(rng), y = u(rng), z = u(rng);
    return {t, x, y, z};
}

// max |element| over columns whose total occupation is below the cutoff
double interior_max_abs(const OperatorMatrix& op, const FockSpace& fs) {
    double best = 0.0;
    const auto& m = op.sparse();
    for (int col = 0; col < m.outerSize(); ++col) {
        if (fs.total_occupation(static_cast<std::size_t>(col)) >= fs.n_max_total()) continue;
        for (OperatorMatrix::Sparse::InnerIterator it(m, col); it; ++it) best = std::max(best, std::abs(it.value()));
    }
    return best;
}

// Box with measure 1 used for exact spectrum checks.
ModeSet unit_measure_box(TachyonMass m) {
    const int n_max = std::max(1, static_cast<int>(std::ceil(m.value())) + 1);
    return build_box_modes(2.0 * kPi, n_max, m);
}

std::vector<CheckResult> etcr_suite(const RunConfig& cfg) {
    Recorder rec("etcr");
    const TachyonMass m = cfg.m();
    const ModeSet ms = cfg.mode_set();
    const double L = ms.box_length();
    std::mt19937_64 rng(cfg.seed);

    rec.guard("smeared_field_commutator", [&] {
        double phi_phi = 0.0, phi_pi = 0.0;
        for (int i = 0; i < 20; ++i) {
            const GaussianSmearing f = random_gaussian(rng, L, m);
            const GaussianSmearing g = random_gaussian(rng, L, m);
            const double t = std::uniform_real_distribution<double>(-2.0, 2.0)(rng) / m.value();
            phi_phi = std::max(phi_phi, std::abs(smeared_equal_time_commutator(f, g, t, ms)));
            const cd expected(0.0, smeared_delta_m_box(f, g, ms));
            phi_pi = std::max(phi_pi, std::abs(smeared_field_momentum_commutator(f, g, t, ms) - expected));
        }
        rec.bound("smeared_phi_phi", phi_phi, 1e-10, "max |<f,[phi,phi](t) g>| over 20 Gaussian pairs");
        rec.bound("smeared_phi_pi", phi_pi, 1e-8, "max |<f,[phi,pi](t) g> - i<f, delta_m g>| over 20 pairs");
    });

    rec.guard("equal_time_dt_commutator", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const FourVector x = random_point(rng, 3.0 / m.value());
            FourVector y = random_point(rng, 3.0 / m.value());
            y.t = x.t;
            worst = std::max(worst, std::abs(commutator_box_dt(x, y, ms) + delta_m_box((x - y).spatial(), ms)));
        }
        rec.bound("equal_time_dt_commutator", worst, 1e-12, "max |d_t Delta + delta_m| at equal times");
    });

    rec.guard("klein_gordon_order", [&] {
        const double hs[] = {0.2, 0.1, 0.05, 0.025};
        double min_order = 1e300;
        for (int i = 0; i < 10; ++i) {
            const FourVector x = random_point(rng, 3.0 / m.value());
            double prev = std::abs(klein_gordon_residual_box(x, ms, hs[0] / m.value()));
            for (int j = 1; j < 4; ++j) {
                const double cur = std::abs(klein_gordon_residual_box(x, ms, hs[j] / m.value()));
                min_order = std::min(min_order, std::log2(prev / cur));
                prev = cur;
            }
        }
        rec.add("klein_gordon_order", min_order, 1.8, min_order >= 1.8,
                "smallest observed finite-difference order of (box - m^2) Delta+");
    });
    return rec.take();
}

std::vector<CheckResult> scaling_suite(const RunConfig& cfg) {
    Recorder rec("scaling");
    const TachyonMass m = cfg.m();
    const double inv_m = 1.0 / m.value();
    const std::vector<double> lambdas{0.5, 0.25, 0.125, 0.0625};
    const double r2 = std::sqrt(1.0 + 0.15 * 0.15);
    const std::pair<const char*, FourVector> points[] = {
        {"spacelike_equal_time", {0.0, 0.0, 0.0, inv_m}},
        {"spacelike_moving", {0.15 * inv_m, 0.0, 0.0, r2 * inv_m}},
        {"timelike_rest", {inv_m, 0.0, 0.0, 0.0}},
    };
    for (const auto& [name, x] : points) {
        rec.guard(name, [&, name = std::string(name), x = x] {
            const auto curve = scaling_limit_curve(x, lambdas, m, cfg.quadrature);
            bool decreasing = true;
            for (std::size_t i = 1; i < curve.size(); ++i)
                decreasing = decreasing &&
                             curve[i].relative_error + curve[i].est_error + curve[i - 1].est_error < curve[i - 1].relative_error;
            rec.add(name + "_monotone", decreasing ? 0.0 : 1.0, 0.0, decreasing,
                    "relative error strictly decreasing over lambda = 0.5 ... 0.0625");
            const ScalingPoint& last = curve.back();
            rec.bound(name + "_final", last.relative_error, 0.02 + last.est_error, "relative error at lambda = 0.0625");
        });
    }
    return rec.take();
}

std::vector<CheckResult> pct_suite(const RunConfig& cfg) {
    Recorder rec("pct");
    const TachyonMass m = cfg.m();
    std::mt19937_64 rng(cfg.seed + 1);
    const BoxEvaluator box(cfg.mode_set());
    const Boost boost(0.6, Vec3(1.0, 2.0, -0.5));
    const BoostedEvaluator boosted(box, boost);

    auto sweep = [&](const std::string& name, const Evaluator& source) {
        rec.guard(name, [&] {
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                FourVector x = random_point(rng, 3.0 / m.value());
                const double scale = std::abs(source.wightman(x, FourVector{}).value);
                worst = std::max(worst, pct_residual(x, source) / scale);
            }
            rec.bound(name, worst, 1e-12, "max |Delta+(x)^* - Delta+(-x)| / |Delta+(x)| over 100 points");
        });
    };
    sweep("box", box);
    sweep("boosted_box", boosted);
    if (cfg.evaluator == "radial") {
        const RadialEvaluator radial(m, cfg.quadrature);
        rec.guard("radial", [&] {
            double worst = 0.0;
            int used = 0;
            while (used < 100) {
                const FourVector x = random_point(rng, 3.0 / m.value());
                const double gap = std::abs(std::abs(x.t) - x.spatial().norm());
                if (gap <= 2.0 * cfg.quadrature.light_cone_band / m.value()) continue;
                worst = std::max(worst, pct_residual(x, radial) / std::abs(radial.wightman(x, FourVector{}).value));
                ++used;
            }
            rec.bound("radial", worst, 1e-12, "radial evaluator, 100 points off the light cone");
        });
    }
    return rec.take();
}

std::vector<CheckResult> lorentz_suite(const RunConfig& cfg) {
    Recorder rec("lorentz");
    const TachyonMass m = cfg.m();
    const double inv_m = 1.0 / m.value();
    const RadialEvaluator radial(m, cfg.quadrature);
    constexpr double kTol = 1e-3;
    const double betas[] = {0.0, 0.2, 0.4, 0.6, 0.8};
    const std::pair<const char*, FourVector> bases[] = {
        {"symmetric_spacelike_hyperbola", {0.5 * inv_m, 0.0, 0.0, 2.0 * inv_m}},
        {"symmetric_timelike_hyperbola", {2.0 * inv_m, 0.0, 0.0, 0.5 * inv_m}},
    };
    for (const auto& [name, x0] : bases) {
        rec.guard(name, [&, name = std::string(name), x0 = x0] {
            const PropagatorValue ref = symmetric_part(x0, FourVector{}, radial);
            double worst = 0.0;
            bool ok = true;
            for (double beta : betas) {
                const BoostedEvaluator pulled(radial, Boost::along_z(beta));
                const PropagatorValue v = symmetric_part(x0, FourVector{}, pulled);
                const double rel = std::abs(v.value - ref.value) / std::abs(ref.value);
                const double allowed = kTol + (v.est_error + ref.est_error) / std::abs(ref.value);
                worst = std::max(worst, rel);
                ok = ok && rel <= allowed;
            }
            rec.add(name, worst, kTol, ok, "max relative change of Delta1 under boosts up to beta = 0.8");
        });
    }
    rec.guard("commutator_breaking", [&] {
        const FourVector x0 = bases[0].second;
        const PropagatorValue ref = commutator(x0, FourVector{}, radial);
        const PropagatorValue v = commutator(x0, FourVector{}, BoostedEvaluator(radial, Boost::along_z(0.8)));
        const double rel = std::abs(v.value - ref.value) / std::abs(ref.value);
        const double needed = 10.0 * (kTol + (v.est_error + ref.est_error) / std::abs(ref.value));
        rec.add("commutator_breaking", rel, needed, rel > needed,
                "relative change of Delta under a beta = 0.8 pullback must exceed 10x the invariance tolerance");
    });
    return rec.take();
}

std::vector<CheckResult> hadamard_suite(const RunConfig& cfg) {
    Recorder rec("hadamard");
    const TachyonMass m = cfg.m();
    const double inv_m = 1.0 / m.value();
    struct Case {
        const char* name;
        FourVector base;
        FourVector dir;
        ProbeTarget target;
        DecayClass expected;
    };
    const double z3 = -std::sqrt(1.5 * 1.5 - 0.6 * 0.6 - 0.8 * 0.8);
    const FourVector cones[] = {{1, 0, 0, 1}, {2, 2, 0, 0}, {1.5, 0.6, 0.8, z3}};
    std::vector<Case> cases;
    const char* fut_names[] = {"cone_z_future", "cone_x_future", "cone_oblique_future"};
    const char* past_names[] = {"cone_z_past", "cone_x_past", "cone_oblique_past"};
    for (int i = 0; i < 3; ++i) {
        const FourVector b = inv_m * cones[i];
        const FourVector d = (1.0 / cones[i].t) * cones[i];
        cases.push_back({fut_names[i], b, d, ProbeTarget::Wightman, DecayClass::Slow});
        cases.push_back({past_names[i], b, -d, ProbeTarget::Wightman, DecayClass::Rapid});
    }
    cases.push_back({"spacelike_base", inv_m * FourVector{0, 0, 0, 2}, {1, 0, 0, 1}, ProbeTarget::Wightman, DecayClass::Rapid});
    cases.push_back({"timelike_base", inv_m * FourVector{2, 0, 0, 0.5}, {1, 0, 0, 1}, ProbeTarget::Wightman, DecayClass::Rapid});
    cases.push_back({"symmetric_cone_past", inv_m * cones[0], {-1, 0, 0, -1}, ProbeTarget::Symmetric, DecayClass::Slow});

    std::vector<CheckResult> results(cases.size());
    parallel_for(cases.size(), cfg.workers, [&](std::size_t i) {
        Recorder local("hadamard");
        const Case& c = cases[i];
        local.guard(c.name, [&] {
            WavefrontProbe probe{c.base, c.dir};
            probe.window_sigma = 0.15 * inv_m;
            for (double& R : probe.radii) R *= m.value();
            probe.target = c.target;
            const DecayReport report = wavefront_decay_probe(probe, m);
            local.add(c.name, report.fitted_slope, -(probe.max_power + 1.0), report.decay == c.expected,
                      std::string("expected ") + to_string(c.expected) + ", fitted " + to_string(report.decay));
        });
        results[i] = local.take().front();
    });
    return results;
}

std::vector<CheckResult> fock_suite(const RunConfig& cfg) {
    Recorder rec("fock");
    const TachyonMass m = cfg.m();
    const ModeSet ms = cfg.mode_set();
    std::mt19937_64 rng(cfg.seed + 2);

    rec.guard("ccr", [&] {
        for (bool charged : {false, true}) {
            const FockSpace fs(ms, select_fock_modes(ms, cfg.fock_modes), cfg.fock_n_max_total, charged);
            const CcrReport r = ccr_report(fs);
            const std::string tag = charged ? "charged" : "neutral";
            rec.bound("ccr_interior_" + tag, r.interior_residual, 1e-12, "ladder identities below the top shell");
            rec.add("ccr_boundary_" + tag, r.boundary_residual, 0.5, r.boundary_residual > 0.5,
                    "truncation visibly breaks [a, a^dag] = 1 on the top shell only");
        }
    });

    rec.guard("spectrum", [&] {
        const ModeSet unit = unit_measure_box(m);
        const FockSpace fs(unit, select_fock_modes(unit, 4), 3, false);
        const OperatorMatrix h = hamiltonian_op(fs);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.dense());
        const std::vector<double> diag = hamiltonian_spectrum(fs);
        double spread = 0.0;
        for (std::size_t i = 0; i < diag.size(); ++i)
            spread = std::max(spread, std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(i)) - diag[i]));
        rec.bound("spectrum_eigensolve", spread, 1e-12, "dense eigenvalues vs diagonal of H");
        rec.bound("vacuum_energy", std::abs(h.element(0, 0)), 0.0, "normal-ordered vacuum energy");
        rec.bound("h_positive", std::max(0.0, -solver.eigenvalues().minCoeff()), 0.0, "most negative eigenvalue of H");

        double hp = 0.0;
        for (const OperatorMatrix& p : momentum_op(fs)) hp = std::max(hp, commutator(h, p).max_abs());
        rec.bound("h_p_commute", hp, 0.0, "max |[H, P_i]|");

        const FockSpace charged(unit, select_fock_modes(unit, 2), 2, true);
        rec.bound("h_q_commute", commutator(hamiltonian_op(charged), charge_op(charged, 1.0)).max_abs(), 0.0,
                  "max |[H, Q]|");

        const PeriodicGrid grid{unit.box_length(), 2 * unit.n_max() + 2};
        const double grid_res = (grid_hamiltonian(fs, grid, 0.37) - h).max_abs();
        rec.bound("grid_hamiltonian", grid_res, 1e-10, "normal-ordered field energy on the grid vs sum omega N");
    });

    rec.guard("two_path", [&] {
        const FockSpace fs(ms, select_fock_modes(ms, cfg.fock_modes), 2, false);
        std::vector<Mode> sub;
        for (std::size_t i = 0; i < fs.mode_count(); ++i) sub.push_back(fs.mode(i));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const FourVector x = random_point(rng, 5.0 / m.value());
            const FourVector y = random_point(rng, 5.0 / m.value());
            const cd fock = vacuum_expectation(field_operator(fs, x), field_operator(fs, y));
            const cd box = wightman_mode_sum(x, y, sub, ms.measure());
            worst = std::max(worst, std::abs(fock - box) / std::abs(box));
        }
        rec.bound("two_path", worst, 1e-12, "<0|phi(x) phi(y)|0> vs mode sum, 100 pairs");
    });

    rec.guard("fock_etcr", [&] {
        const FockSpace fs(ms, select_fock_modes(ms, cfg.fock_modes), cfg.fock_n_max_total, false);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            const GaussianSmearing f = random_gaussian(rng, ms.box_length(), m);
            const GaussianSmearing g = random_gaussian(rng, ms.box_length(), m);
            const OperatorMatrix c = commutator(smeared_field(fs, f, 0.4), smeared_momentum(fs, g, 0.4));
            const OperatorMatrix residual = c - etcr_expected(fs, f, g) * OperatorMatrix::identity(fs.dimension());
            worst = std::max(worst, interior_max_abs(residual, fs));
        }
        rec.bound("fock_etcr", worst, 1e-12, "[phi(f), pi(g)] - i (f, delta_m g) on interior states");
    });
    return rec.take();
}

std::vector<CheckResult> causality_suite(const RunConfig& cfg) {
    Recorder rec("causality");
    const TachyonMass m = cfg.m();
    std::mt19937_64 rng(cfg.seed + 3);

    rec.guard("relay_chains", [&] {
        std::vector<RelayChain> chains;
        for (int i = 0; i < cfg.chains; ++i) chains.push_back(random_chain(rng, m, cfg.max_legs));
        std::vector<Boost> frames;
        for (const Vec3& axis : {Vec3(Vec3::UnitX()), Vec3(Vec3::UnitY()), Vec3(Vec3::UnitZ())})
            for (double beta : {-0.99, -0.9, -0.5, 0.5, 0.9, 0.99}) frames.emplace_back(beta, axis);

        std::vector<ChainVerdict> verdicts(chains.size());
        std::vector<char> legs_spacelike(chains.size(), 1), legs_reversible(chains.size(), 1);
        parallel_for(chains.size(), cfg.workers, [&](std::size_t i) {
            verdicts[i] = antitelephone_check(chains[i], m, frames);
            for (const SignalLeg& leg : chains[i].legs) {
                const FourVector d = leg_displacement(leg, m);
                if (interval_class(d, 0.0) != IntervalClass::Spacelike) legs_spacelike[i] = 0;
                // Any boost along the leg faster than 1 / speed reverses its time order.
                const double speed = d.spatial().norm() / d.t;
                const Boost b(0.5 * (1.0 + 1.0 / speed), d.spatial());
                if (!(leg_time_in_frame(leg, b, m) < 0.0)) legs_reversible[i] = 0;
            }
        });
        double min_dt = 1e300;
        std::size_t violations = 0;
        for (const ChainVerdict& v : verdicts) {
            min_dt = std::min(min_dt, v.total_dt);
            violations += v.violation ? 1 : 0;
        }
        rec.add("total_dt_positive", min_dt, 0.0, min_dt > 0.0, "smallest preferred-frame elapsed time over chains");
        rec.bound("no_timelike_past", static_cast<double>(violations), 0.0,
                  "chains ending in the timelike past of their origin in any inspected frame");
        const auto bad_legs = std::count(legs_spacelike.begin(), legs_spacelike.end(), 0);
        rec.bound("legs_spacelike", static_cast<double>(bad_legs), 0.0, "chains with a non-spacelike leg");
        const auto fixed_legs = std::count(legs_reversible.begin(), legs_reversible.end(), 0);
        rec.bound("legs_reverse_in_some_frame", static_cast<double>(fixed_legs), 0.0,
                  "chains with a leg that no boost sends backward in time");
    });

    rec.guard("spectrum_halving", [&] {
        for (double beta : {0.0, 0.5, 0.9}) {
            const SpectrumCut cut(m, beta);
            std::size_t failures = 0, on_plane = 0;
            for (int i = 0; i < cfg.samples; ++i) {
                const FourVector k = random_on_shell(rng, m);
                try {
                    if (!halving_consistency(k, cut)) ++failures;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::OnCutPlane) throw;
                    ++on_plane;
                }
            }
            rec.bound("halving_beta_" + std::to_string(beta).substr(0, 3), static_cast<double>(failures), 0.0,
                      std::to_string(on_plane) + " samples on the cut plane skipped");
        }
    });

    rec.guard("frame_consistency", [&] {
        std::size_t failures = 0;
        for (int i = 0; i < cfg.samples; ++i) {
            FourVector k = random_on_shell(rng, m);
            if (k.t < 0.0) k = -k;
            for (double beta = -0.99; beta <= 0.99 + 1e-12; beta += 0.11) {
                const SpectrumCut cut(m, beta);
                if (!spectrum_allowed(boost_apply(cut.frame(), k), cut)) ++failures;
            }
        }
        rec.bound("frame_consistency", static_cast<double>(failures), 0.0,
                  "preferred-frame modes violating the boosted cut after the boost");
    });
    return rec.take();
}

using SuiteFn = std::vector<CheckResult> (*)(const RunConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> table{
        {"etcr", etcr_suite},         {"scaling", scaling_suite}, {"pct", pct_suite},
        {"lorentz", lorentz_suite},   {"hadamard", hadamard_suite}, {"fock", fock_suite},
        {"causality", causality_suite},
    };
    return table;
}

}  // namespace

double RunConfig::effective_box_length() const { return box_length > 0.0 ? box_length : 8.0 * kPi / mass; }

ModeSet RunConfig::mode_set() const {
    ModeSet ms = build_box_modes(effective_box_length(), n_max, m());
    return omega_shift == 0.0 ? ms : with_frequency_shift(ms, omega_shift);
}

void RunConfig::validate() const {
    const TachyonMass mm = m();
    if (evaluator != "box" && evaluator != "radial")
        throw Error(ErrorCode::InvalidArgument, "evaluator must be box or radial");
    if (!(box_length >= 0.0) || !std::isfinite(box_length))
        throw Error(ErrorCode::InvalidArgument, "box-length must be >= 0 (0 selects 8 pi / m)");
    if (n_max < 1 || n_max > 64) throw Error(ErrorCode::InvalidArgument, "n-max must lie in [1, 64]");
    if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
    if (fock_modes < 1 || fock_n_max_total < 1) throw Error(ErrorCode::InvalidArgument, "Fock parameters must be >= 1");
    if (chains < 1 || max_legs < 1 || samples < 1)
        throw Error(ErrorCode::InvalidArgument, "chains, max-legs and samples must be >= 1");
    if (!std::isfinite(omega_shift)) throw Error(ErrorCode::InvalidArgument, "omega shift must be finite");
    quadrature.validate(mm);
}

nlohmann::json RunConfig::to_json() const {
    return {{"mass", mass},
            {"evaluator", evaluator},
            {"box_length", effective_box_length()},
            {"n_max", n_max},
            {"seed", seed},
            {"out", out},
            {"workers", workers},
            {"quadrature", quadrature.to_json()},
            {"fock_modes", fock_modes},
            {"fock_n_max_total", fock_n_max_total},
            {"fock_charged", fock_charged},
            {"chains", chains},
            {"max_legs", max_legs},
            {"samples", samples},
            {"omega_shift", omega_shift}};
}

nlohmann::json CheckResult::to_json() const {
    nlohmann::json j{{"suite", suite}, {"name", name}, {"passed", passed}, {"tolerance", tolerance}, {"detail", detail}};
    j["residual"] = std::isfinite(residual) ? nlohmann::json(residual) : nlohmann::json(nullptr);
    return j;
}

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* SuiteReport::first_failure() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const CheckResult& c : checks) list.push_back(c.to_json());
    nlohmann::json j{{"passed", passed()}, {"seconds", seconds}, {"checks", std::move(list)}};
    if (const CheckResult* f = first_failure()) j["first_failure"] = f->to_json();
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suites()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string& suite, const RunConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report;
    bool matched = false;
    for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        matched = true;
        std::vector<CheckResult> part;
        try {
            part = fn(cfg);
        } catch (const std::exception& e) {
            part.push_back({name, "setup", false, std::nan(""), 0.0, std::string("error: ") + e.what()});
        }
        report.checks.insert(report.checks.end(), part.begin(), part.end());
    }
    if (!matched) throw Error(ErrorCode::InvalidArgument, "unknown suite: " + suite);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::vector<std::size_t> select_fock_modes(const ModeSet& ms, int count) {
    if (count < 1) throw Error(ErrorCode::InvalidArgument, "need at least one Fock mode");
    std::vector<std::size_t> order(ms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ka = ms[a].kvec.squaredNorm(), kb = ms[b].kvec.squaredNorm();
        if (ka != kb) return ka < kb;
        return ms[a].lattice > ms[b].lattice;
    });
    std::vector<std::size_t> out;
    for (std::size_t i : order) {
        if (static_cast<int>(out.size()) + 1 >= count) break;
        if (std::find(out.begin(), out.end(), i) != out.end()) continue;
        const auto& n = ms[i].lattice;
        const auto partner = ms.find({-n[0], -n[1], -n[2]});
        out.push_back(i);
        out.push_back(*partner);
    }
    if (static_cast<int>(out.size()) < count) {
        for (std::size_t i : order) {
            if (std::find(out.begin(), out.end(), i) == out.end()) {
                out.push_back(i);
                break;
            }
        }
    }
    if (static_cast<int>(out.size()) != count) throw Error(ErrorCode::InvalidArgument, "mode set has too few modes");
    return out;
}

}  // namespace tachyon
