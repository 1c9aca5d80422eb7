#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/cli.hpp"

namespace fs = std::filesystem;
using namespace tachyon;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run lab(std::vector<std::string> args) {
    args.insert(args.begin(), "tachyon-lab");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    const fs::path p = fs::temp_directory_path() / ("tachyon-cli-" + tag + "-" + std::to_string(rng()));
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("propagator scans") {
    const fs::path dir = scratch("prop");
    SUBCASE("massless reference row") {
        const Run r = lab({"propagator", "--kind", "massless", "--t-min", "0", "--t-max", "0", "--t-steps", "1",
                           "--r-min", "1", "--r-max", "1", "--r-steps", "1", "--out", dir.string()});
        REQUIRE(r.code == 0);
        CHECK(slurp(dir / "propagator.csv").rfind("t,r,Re,Im,est_error\n", 0) == 0);
        const auto rows = csv_rows(dir / "propagator.csv");
        REQUIRE(rows.size() == 1);
        CHECK(rows[0][2] == doctest::Approx(0.0253303).epsilon(1e-6));
        const auto man = nlohmann::json::parse(slurp(dir / "manifest.json"));
        CHECK(man.at("verb") == "propagator");
        CHECK(man.at("config").at("seed") == 20240611);
        CHECK(man.contains("version"));
    }
    SUBCASE("equal-time commutator vanishes on the box") {
        const Run r = lab({"propagator", "--kind", "commutator", "--t-min", "0", "--t-max", "0", "--t-steps",
                           "1", "--r-min", "0.1", "--r-max", "3", "--r-steps", "12", "--out", dir.string()});
        REQUIRE(r.code == 0);
        const auto rows = csv_rows(dir / "propagator.csv");
        CHECK(rows.size() == 12);
        for (const auto& row : rows) CHECK(std::hypot(row[2], row[3]) < 1e-10);
    }
    SUBCASE("byte-identical reruns across worker counts") {
        std::vector<std::string> args{"propagator", "--kind", "wightman", "--t-steps", "4", "--r-steps", "5",
                                      "--t-max", "2", "--r-min", "0.5", "--r-max", "3", "--n-max", "4"};
        auto a = args, b = args;
        a.insert(a.end(), {"--out", (dir / "a").string(), "--workers", "1"});
        b.insert(b.end(), {"--out", (dir / "b").string(), "--workers", "4"});
        REQUIRE(lab(a).code == 0);
        REQUIRE(lab(b).code == 0);
        CHECK(slurp(dir / "a" / "propagator.csv") == slurp(dir / "b" / "propagator.csv"));
    }
    SUBCASE("radial evaluator reports light-cone points") {
        const Run r = lab({"propagator", "--evaluator", "radial", "--t-min", "1", "--t-max", "1", "--t-steps", "1",
                           "--r-min", "1", "--r-max", "1", "--r-steps", "1", "--out", dir.string()});
        CHECK(r.code == cli::module_exit_code(ErrorCode::LightConeSingular));
        CHECK(r.err.find("LightConeSingular") != std::string::npos);
    }
    fs::remove_all(dir);
}

TEST_CASE("check verb") {
    const fs::path dir = scratch("check");
    const Run pass = lab({"check", "--suite", "pct", "--out", dir.string()});
    CHECK(pass.code == cli::kExitOk);
    const auto report = nlohmann::json::parse(slurp(dir / "check-pct.json"));
    CHECK(report.at("report").at("passed") == true);

    const Run broken = lab({"check", "--suite", "etcr", "--omega-shift", "0.1", "--out", dir.string()});
    CHECK(broken.code == cli::kExitCheckFailed);
    CHECK(broken.err.find("etcr/") != std::string::npos);

    CHECK(lab({"check", "--suite", "nonsense", "--out", dir.string()}).code != cli::kExitOk);
    fs::remove_all(dir);
}

TEST_CASE("spectrum verb") {
    const fs::path dir = scratch("spec");
    const Run r = lab({"spectrum", "--beta", "0.5", "--momentum", "0,0,0,1", "--momentum", "0,0,0,-1", "--samples",
                       "500", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "spectrum.json"));
    CHECK(j.at("requested")[0].at("allowed") == true);
    CHECK(j.at("requested")[1].at("allowed") == false);
    CHECK(j.at("summary").at("halving_failures") == 0);

    REQUIRE(lab({"spectrum", "--beta", "0", "--samples", "300", "--out", dir.string()}).code == 0);
    const auto rest = nlohmann::json::parse(slurp(dir / "spectrum.json"));
    for (const auto& s : rest.at("samples")) CHECK(s.at("allowed").get<bool>() == (s.at("k")[0].get<double>() > 0.0));

    CHECK(lab({"spectrum", "--momentum", "1,2", "--out", dir.string()}).code == cli::module_exit_code(ErrorCode::InvalidArgument));
    fs::remove_all(dir);
}

TEST_CASE("causality and fock-report verbs") {
    const fs::path dir = scratch("caus");
    const Run r = lab({"causality", "--chains", "300", "--workers", "2", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "causality.json"));
    CHECK(j.at("summary").at("violations") == 0);
    CHECK(j.at("summary").at("min_total_dt").get<double>() > 0.0);

    std::ofstream(dir / "bad.json") << R"({"origin": [0, 0, 0, 0], "legs": [{"kvec": [2, 0, 0], "duration": -1}]})";
    CHECK(lab({"causality", "--chain-file", (dir / "bad.json").string(), "--out", dir.string()}).code ==
          cli::module_exit_code(ErrorCode::SpectrumForbiddenLeg));
    CHECK(lab({"causality", "--chain-file", (dir / "missing.json").string(), "--out", dir.string()}).code ==
          cli::kExitIo);

    REQUIRE(lab({"fock-report", "--fock-modes", "2", "--fock-n-max-total", "2", "--out", dir.string()}).code == 0);
    const auto f = nlohmann::json::parse(slurp(dir / "fock-report.json"));
    CHECK(f.at("fock").at("dimension") == 6);
    CHECK(f.at("vacuum_energy") == 0.0);
    fs::remove_all(dir);
}

TEST_CASE("configuration and exit codes") {
    const fs::path dir = scratch("cfg");
    std::ofstream(dir / "run.ini") << "mass = 2.0\nseed = 7\nn-max = 3\n";
    REQUIRE(lab({"--config", (dir / "run.ini").string(), "--seed", "11", "spectrum", "--samples", "10", "--out",
                 dir.string()})
                .code == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "spectrum.json"));
    CHECK(j.at("config").at("mass") == 2.0);
    CHECK(j.at("config").at("n_max") == 3);
    CHECK(j.at("config").at("seed") == 11);

    CHECK(lab({}).code == cli::kExitUsage);
    CHECK(lab({"teleport"}).code == cli::kExitUsage);
    CHECK(lab({"propagator", "--evaluator", "lattice"}).code == cli::kExitUsage);
    CHECK(lab({"propagator", "--mass", "abc"}).code == cli::kExitUsage);
    CHECK(lab({"--config", (dir / "none.ini").string(), "spectrum"}).code == cli::kExitIo);
    CHECK(lab({"spectrum", "--mass", "-1", "--out", dir.string()}).code == cli::module_exit_code(ErrorCode::InvalidArgument));
    std::ofstream(dir / "file") << "x";
    CHECK(lab({"spectrum", "--samples", "1", "--out", (dir / "file" / "sub").string()}).code == cli::kExitIo);
    CHECK(lab({"--help"}).code == cli::kExitOk);
    fs::remove_all(dir);
}
