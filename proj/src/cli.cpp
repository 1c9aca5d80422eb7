#include "tachyon/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tachyon/causality.hpp"
#include "tachyon/checks.hpp"
#include "tachyon/fock.hpp"
#include "tachyon/parallel.hpp"
#include "tachyon/propagators.hpp"

namespace tachyon::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    RunConfig cfg;
    std::string suite = "all";
    std::string kind = "wightman";
    double t_min = 0.0, t_max = 0.0;
    int t_steps = 1;
    double r_min = 0.5, r_max = 3.0;
    int r_steps = 6;
    double beta = 0.0;
    std::vector<std::string> momenta;
    std::string chain_file;
};

std::filesystem::path output_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_file(path, j.dump(2) + "\n"); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> axis(double lo, double hi, int steps) {
    if (steps < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one step per axis");
    std::vector<double> v;
    for (int i = 0; i < steps; ++i) v.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
    return v;
}

nlohmann::json mode_set_summary(const ModeSet& ms) {
    return {{"box_length", ms.box_length()}, {"n_max", ms.n_max()}, {"mass", ms.mass().value()},
            {"measure", ms.measure()},       {"mode_count", ms.size()}};
}

nlohmann::json manifest(const std::string& verb, const Options& o) {
    return {{"artifact", "tachyon-lab"}, {"version", kVersion}, {"verb", verb}, {"config", o.cfg.to_json()}};
}

int cmd_propagator(const Options& o, std::ostream& out) {
    const RunConfig& cfg = o.cfg;
    const TachyonMass m = cfg.m();
    if (o.kind != "wightman" && o.kind != "commutator" && o.kind != "symmetric" && o.kind != "massless")
        throw Error(ErrorCode::InvalidArgument, "kind must be wightman, commutator, symmetric or massless");
    std::unique_ptr<Evaluator> source;
    nlohmann::json mode_ref = nullptr;
    if (cfg.evaluator == "box") {
        ModeSet ms = cfg.mode_set();
        mode_ref = mode_set_summary(ms);
        source = std::make_unique<BoxEvaluator>(std::move(ms));
    } else {
        source = std::make_unique<RadialEvaluator>(m, cfg.quadrature);
    }

    const std::vector<double> ts = axis(o.t_min, o.t_max, o.t_steps);
    const std::vector<double> rs = axis(o.r_min, o.r_max, o.r_steps);
    std::vector<std::string> rows(ts.size() * rs.size());
    parallel_for(rows.size(), cfg.workers, [&](std::size_t i) {
        const double t = ts[i / rs.size()], r = rs[i % rs.size()];
        const FourVector x{t, 0.0, 0.0, r};
        PropagatorValue v;
        if (o.kind == "wightman")
            v = source->wightman(x, FourVector{});
        else if (o.kind == "commutator")
            v = commutator(x, FourVector{}, *source);
        else if (o.kind == "symmetric")
            v = symmetric_part(x, FourVector{}, *source);
        else
            v = {massless_wightman(x, cfg.quadrature.light_cone_band / m.value()), 0.0};
        rows[i] = fmt(t) + "," + fmt(r) + "," + fmt(v.value.real()) + "," + fmt(v.value.imag()) + "," + fmt(v.est_error) + "\n";
    });

    std::string csv = "t,r,Re,Im,est_error\n";
    for (const std::string& row : rows) csv += row;
    const auto dir = output_dir(cfg);
    write_file(dir / "propagator.csv", csv);
    nlohmann::json man = manifest("propagator", o);
    man["kind"] = o.kind;
    man["grid"] = {{"t_min", o.t_min}, {"t_max", o.t_max}, {"t_steps", o.t_steps},
                   {"r_min", o.r_min}, {"r_max", o.r_max}, {"r_steps", o.r_steps}, {"direction", "z"}};
    man["evaluator"] = o.kind == "massless" ? nlohmann::json{{"evaluator", "massless_closed_form"}} : source->describe();
    man["mode_set"] = mode_ref;
    man["outputs"] = {"propagator.csv"};
    write_json(dir / "manifest.json", man);
    out << "wrote " << rows.size() << " rows to " << (dir / "propagator.csv").string() << "\n";
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const SuiteReport report = run_suite(o.suite, o.cfg);
    for (const CheckResult& c : report.checks)
        out << (c.passed ? "PASS " : "FAIL ") << c.suite << "/" << c.name << " residual=" << c.residual
            << " tolerance=" << c.tolerance << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    const auto dir = output_dir(o.cfg);
    nlohmann::json j = manifest("check", o);
    j["suite"] = o.suite;
    j["report"] = report.to_json();
    write_json(dir / ("check-" + o.suite + ".json"), j);
    if (const CheckResult* f = report.first_failure()) {
        err << "check failed: " << f->suite << "/" << f->name << " residual " << f->residual << " vs tolerance "
            << f->tolerance << "\n";
        return kExitCheckFailed;
    }
    out << "all " << report.checks.size() << " checks passed in " << report.seconds << " s\n";
    return kExitOk;
}

FourVector parse_four_vector(const std::string& text) {
    std::stringstream ss(text);
    std::vector<double> v;
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "momentum must be four comma-separated numbers: " + text);
        }
    }
    if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "momentum must be four comma-separated numbers: " + text);
    return {v[0], v[1], v[2], v[3]};
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    const RunConfig& cfg = o.cfg;
    const SpectrumCut cut(cfg.m(), o.beta);
    auto describe = [&](const FourVector& k) {
        nlohmann::json j{{"k", {k.t, k.x, k.y, k.z}},
                         {"allowed", spectrum_allowed(k, cut)},
                         {"mirror_allowed", spectrum_allowed(-k, cut)}};
        try {
            j["halving"] = halving_consistency(k, cut);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OnCutPlane && e.code() != ErrorCode::InvalidArgument) throw;
            j["halving"] = std::string(to_string(e.code()));
        }
        return j;
    };
    nlohmann::json requested = nlohmann::json::array();
    for (const std::string& text : o.momenta) requested.push_back(describe(parse_four_vector(text)));

    std::mt19937_64 rng(cfg.seed);
    nlohmann::json samples = nlohmann::json::array();
    std::size_t allowed = 0, halving_failures = 0, on_plane = 0;
    for (int i = 0; i < cfg.samples; ++i) {
        nlohmann::json s = describe(random_on_shell(rng, cfg.m()));
        allowed += s["allowed"].get<bool>() ? 1 : 0;
        if (s["halving"].is_boolean())
            halving_failures += s["halving"].get<bool>() ? 0 : 1;
        else
            ++on_plane;
        samples.push_back(std::move(s));
    }
    nlohmann::json j = manifest("spectrum", o);
    j["beta"] = o.beta;
    j["requested"] = requested;
    j["summary"] = {{"samples", cfg.samples},
                    {"allowed", allowed},
                    {"forbidden", static_cast<std::size_t>(cfg.samples) - allowed},
                    {"on_cut_plane", on_plane},
                    {"halving_failures", halving_failures}};
    j["samples"] = std::move(samples);
    const auto dir = output_dir(cfg);
    write_json(dir / "spectrum.json", j);
    for (const auto& r : requested)
        out << "k=" << r["k"].dump() << " allowed=" << r["allowed"] << " mirror_allowed=" << r["mirror_allowed"] << "\n";
    out << "samples=" << cfg.samples << " allowed=" << allowed << " halving_failures=" << halving_failures << "\n";
    return halving_failures == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_fock_report(const Options& o, std::ostream& out) {
    const RunConfig& cfg = o.cfg;
    const ModeSet ms = cfg.mode_set();
    const FockSpace fs(ms, select_fock_modes(ms, cfg.fock_modes), cfg.fock_n_max_total, cfg.fock_charged);
    const OperatorMatrix h = hamiltonian_op(fs);
    nlohmann::json modes = nlohmann::json::array();
    for (std::size_t i = 0; i < fs.mode_count(); ++i) {
        const Mode& md = fs.mode(i);
        modes.push_back({{"n", md.lattice}, {"kvec", {md.kvec.x(), md.kvec.y(), md.kvec.z()}}, {"omega", md.omega}});
    }
    double hp = 0.0;
    for (const OperatorMatrix& p : momentum_op(fs)) hp = std::max(hp, commutator(h, p).max_abs());
    nlohmann::json j = manifest("fock-report", o);
    j["mode_set"] = mode_set_summary(ms);
    j["fock"] = {{"dimension", fs.dimension()}, {"n_max_total", fs.n_max_total()}, {"charged", fs.charged()},
                 {"modes", modes}};
    j["spectrum"] = hamiltonian_spectrum(fs);
    j["vacuum_energy"] = h.element(0, 0).real();
    j["ccr"] = ccr_report(fs).to_json();
    j["commutators"] = {{"h_p", hp}};
    if (fs.charged()) {
        j["commutators"]["h_q"] = commutator(h, charge_op(fs, 1.0)).max_abs();
    } else {
        const PeriodicGrid grid{ms.box_length(), 2 * ms.n_max() + 2};
        j["grid_hamiltonian_residual"] = (grid_hamiltonian(fs, grid, 0.0) - h).max_abs();
    }
    const auto dir = output_dir(cfg);
    write_json(dir / "fock-report.json", j);
    out << "dimension=" << fs.dimension() << " interior_ccr_residual=" << j["ccr"]["interior_residual"]
        << " boundary_ccr_residual=" << j["ccr"]["boundary_residual"] << "\n";
    return kExitOk;
}

int cmd_causality(const Options& o, std::ostream& out) {
    const RunConfig& cfg = o.cfg;
    const TachyonMass m = cfg.m();
    std::vector<RelayChain> chains;
    if (!o.chain_file.empty()) {
        std::ifstream f(o.chain_file);
        if (!f) throw IoError("cannot read chain file " + o.chain_file);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, std::string("chain file is not valid JSON: ") + e.what());
        }
        if (doc.is_object() && doc.contains("chains"))
            for (const auto& c : doc["chains"]) chains.push_back(chain_from_json(c));
        else
            chains.push_back(chain_from_json(doc));
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (int i = 0; i < cfg.chains; ++i) chains.push_back(random_chain(rng, m, cfg.max_legs));
    }
    std::vector<Boost> frames;
    for (double beta : {-0.9, -0.5, 0.5, 0.9}) frames.push_back(Boost::along_z(beta));
    std::vector<ChainVerdict> verdicts(chains.size());
    parallel_for(chains.size(), cfg.workers, [&](std::size_t i) { verdicts[i] = antitelephone_check(chains[i], m, frames); });

    std::size_t violations = 0;
    double min_dt = std::numeric_limits<double>::infinity();
    nlohmann::json list = nlohmann::json::array();
    for (const ChainVerdict& v : verdicts) {
        violations += v.violation ? 1 : 0;
        min_dt = std::min(min_dt, v.total_dt);
        if (!o.chain_file.empty()) list.push_back(v.to_json());
    }
    nlohmann::json j = manifest("causality", o);
    j["source"] = o.chain_file.empty() ? nlohmann::json("random") : nlohmann::json(o.chain_file);
    j["summary"] = {{"chains", chains.size()}, {"violations", violations}, {"min_total_dt", min_dt}};
    if (!o.chain_file.empty()) j["verdicts"] = list;
    const auto dir = output_dir(cfg);
    write_json(dir / "causality.json", j);
    out << "chains=" << chains.size() << " violations=" << violations << " min_total_dt=" << min_dt << "\n";
    return violations == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int module_exit_code(ErrorCode code) { return kExitModuleBase + static_cast<int>(code); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    RunConfig& cfg = o.cfg;
    CLI::App app{"Numerical laboratory for the stable Lorentz-breaking tachyon field", "tachyon-lab"};
    app.set_config("--config", "", "key = value file; keys are flag names, flags given on the command line win");
    app.fallthrough();
    app.require_subcommand(1, 1);

    app.add_option("--mass", cfg.mass, "tachyonic mass m")->capture_default_str();
    app.add_option("--evaluator", cfg.evaluator, "box or radial")->check(CLI::IsMember({"box", "radial"}))->capture_default_str();
    app.add_option("--box-length", cfg.box_length, "box side L (0 selects 8 pi / m)")->capture_default_str();
    app.add_option("--n-max", cfg.n_max, "lattice cutoff max|n_i|")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
    app.add_option("--suite", o.suite, "check suite: etcr, scaling, pct, lorentz, hadamard, fock, causality or all")
        ->capture_default_str();
    app.add_option("--kind", o.kind, "propagator kind: wightman, commutator, symmetric, massless")->capture_default_str();
    app.add_option("--t-min", o.t_min)->capture_default_str();
    app.add_option("--t-max", o.t_max)->capture_default_str();
    app.add_option("--t-steps", o.t_steps)->capture_default_str();
    app.add_option("--r-min", o.r_min)->capture_default_str();
    app.add_option("--r-max", o.r_max)->capture_default_str();
    app.add_option("--r-steps", o.r_steps)->capture_default_str();
    app.add_option("--beta", o.beta, "observer boost along z for spectrum")->capture_default_str();
    app.add_option("--momentum", o.momenta, "4-momentum t,x,y,z to classify (repeatable)");
    app.add_option("--samples", cfg.samples, "random on-shell samples")->capture_default_str();
    app.add_option("--chains", cfg.chains, "random relay chains")->capture_default_str();
    app.add_option("--max-legs", cfg.max_legs, "legs per random chain at most")->capture_default_str();
    app.add_option("--chain-file", o.chain_file, "JSON relay chain (or {\"chains\": [...]}) to check");
    app.add_option("--fock-modes", cfg.fock_modes)->capture_default_str();
    app.add_option("--fock-n-max-total", cfg.fock_n_max_total)->capture_default_str();
    app.add_flag("--charged", cfg.fock_charged, "charged Fock space for fock-report");
    app.add_option("--eps-damping", cfg.quadrature.eps_damping, "damping ladder, fractions of the light-cone gap")
        ->delimiter(',');
    app.add_option("--k-max", cfg.quadrature.k_max)->capture_default_str();
    app.add_option("--n-points", cfg.quadrature.n_points)->capture_default_str();
    app.add_option("--extrapolation-order", cfg.quadrature.extrapolation_order)->capture_default_str();
    app.add_option("--tolerance", cfg.quadrature.tolerance)->capture_default_str();
    app.add_option("--light-cone-band", cfg.quadrature.light_cone_band)->capture_default_str();
    app.add_option("--omega-shift", cfg.omega_shift)->group("");

    auto* propagator = app.add_subcommand("propagator", "scan a two-point function on a (t, r) grid");
    auto* check = app.add_subcommand("check", "run invariant suites");
    auto* spectrum = app.add_subcommand("spectrum", "classify on-shell momenta against the boosted spectrum cut");
    auto* fock = app.add_subcommand("fock-report", "spectra and commutator residuals of a truncated Fock space");
    auto* causality = app.add_subcommand("causality", "anti-telephone check of relay chains");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::FileError& e) {
        err << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        cfg.validate();
        if (*propagator) return cmd_propagator(o, out);
        if (*check) return cmd_check(o, out, err);
        if (*spectrum) return cmd_spectrum(o, out);
        if (*fock) return cmd_fock_report(o, out);
        if (*causality) return cmd_causality(o, out);
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return module_exit_code(e.code());
    }
    return kExitUsage;
}

}  // namespace tachyon::cli
