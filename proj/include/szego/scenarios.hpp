// Scenario runner: reproduces the laboratory experiments from flat JSON
// configs and writes trajectory.csv / report.json / manifest.json.

#ifndef SZEGO_SCENARIOS_HPP
#define SZEGO_SCENARIOS_HPP

#include <random>

#include "szego/flow.hpp"
#include "szego/serialize.hpp"

namespace szego {

struct ScenarioConfig {
    std::string scenario;
    json initial;                  // optional symbol JSON
    double t_end = 8.0;
    double rtol = 1e-10;
    double atol = 1e-12;
    double sample_dt = 0.05;
    std::vector<double> s_list{1.0, 2.0};
    std::vector<double> x_grid;    // optional override
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int count = 0;                 // corpus size, scenario-dependent default
    std::string variant;           // "resonant" (default) or "bounded"
    json raw;

    static ScenarioConfig from_json(const json& j);   // throws ConfigError
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool less_than = true;
    bool pass = false;
};

struct ScenarioResult {
    std::vector<CheckResult> checks;
    json report;
    bool pass() const;
};

/// Runs the scenario and writes artifacts into cfg.out_dir. Returns 0 on
/// success, 3 on numerical failure (report.json carries the error name).
int run_scenario(const ScenarioConfig& cfg);

/// Same, without touching the filesystem (used by the acceptance suite).
ScenarioResult run_scenario_checks(const ScenarioConfig& cfg);

// --- deterministic corpus helpers -----------------------------------------

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return double(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    cxd disc_point(double rmin, double rmax) {
        return std::polar(uniform(rmin, rmax), uniform(0.0, 2.0 * 3.14159265358979323846));
    }
};

// Random element of V(d) with pole moduli in [pole_min, pole_max], rescaled
// so that Q is O(1).
RationalSymbol random_rational_class(Rng& rng, int d, double pole_min = 0.3,
                                     double pole_max = 0.8);

/// z/(1-pz)^2 at |p|^2 = r, scaled by `scale`.
RationalSymbol v4_example_symbol(double r, double scale = 1.0);

/// b + cz/(1-pz) as a rational symbol, scaled by `scale`.
RationalSymbol v3_symbol(double b, double c, double p, double scale = 1.0);

/// ell_1 of the V(4) example family as a function of r (bisection target).
double v4_example_ell1(double r);

/// c > 0 with ell_1(b + c z/(1-pz)) = 0, found by scan + bisection.
double v3_resonant_c(double b, double p);

/// Default turbulent initial data (resonant leaf, amplitude keeping the
/// run resolvable at the max truncation over the default window).
FourierSymbol default_v4_turbulent_symbol();
FourierSymbol default_v3_turbulent_symbol();

double max_drift(const std::vector<double>& series, double guard_scale);

} // namespace szego

#endif
