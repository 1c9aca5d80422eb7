#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tachyon/modes.hpp"
#include "tachyon/propagators.hpp"

namespace tachyon {

/// Everything a CLI run depends on. Defaults make `check all` a desk-scale run.
struct RunConfig {
    double mass = 1.0;
    std::string evaluator = "box";
    /// Box side; 0 selects 8 pi / m.
    double box_length = 0.0;
    int n_max = 6;
    std::uint64_t seed = 20240611;
    std::string out = "tachyon-out";
    int workers = 1;
    QuadratureSpec quadrature;
    int fock_modes = 4;
    int fock_n_max_total = 3;
    bool fock_charged = false;
    int chains = 10000;
    int max_legs = 6;
    int samples = 10000;
    /// Added to every box frequency after construction. Nonzero values break
    /// the dispersion relation; the check harness must notice.
    double omega_shift = 0.0;

    TachyonMass m() const { return TachyonMass(mass); }
    double effective_box_length() const;
    /// Box mode set with omega_shift applied.
    ModeSet mode_set() const;
    void validate() const;
    nlohmann::json to_json() const;
};

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;

    nlohmann::json to_json() const;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool passed() const;
    const CheckResult* first_failure() const;
    nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// suite is one of suite_names() or "all". Module errors raised inside a
/// check are recorded as failures of that check.
SuiteReport run_suite(const std::string& suite, const RunConfig& cfg);

/// The 2 * (count / 2) lowest |k| modes of ms as inversion pairs (+k, -k),
/// plus one unpaired mode when count is odd.
std::vector<std::size_t> select_fock_modes(const ModeSet& ms, int count);

}  // namespace tachyon
