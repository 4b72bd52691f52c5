#pragma once
#include "nlscat/diagnostics.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/potential.hpp"
#include "nlscat/symbol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nlscat {

struct PacketConfig {
    double eps = 1.0;
    double R = 2.0;
    std::vector<double> center;  // center momentum, length == grid.dim
    double smoothness = 0.3;
    double tail_tol = 1e-12;  // accepted spatial boundary tail after construction
};

struct TimesConfig {
    // Either an explicit list or a generated range.
    std::vector<double> list;
    double lo = 0.0, hi = 0.0;
    int count = 0;
    bool geometric = false;

    bool present() const { return !list.empty() || count > 0; }
    std::vector<double> materialize() const;
};

// Verdict tolerances; defaults are the ones the acceptance checks pin down.
struct ToleranceConfig {
    double dead_band = 0.1;     // exponent dead band around the -1 integrability edge
    double r2_min = 0.9;        // minimum fit quality for a trusted exponent
    double exponent_tol = 0.1;  // allowed |fitted - expected| exponent deviation
    double drift_frac = 0.05;   // witness stabilization: drift <= frac * ||phi||^2
};

// Propagation-cone tracking: either a raw speed (falsification controls) or a
// cone_threshold mode anchored at the packet band edges.
struct ConeConfig {
    std::optional<double> speed;
    std::optional<ConeMode> direction;
    int N = 3;  // decay order the run intends to certify
};

// Decay-exponent sweep; each gamma > 1 runs as short_range with amplitude C,
// each gamma <= 1 as long_range with coupling kappa = amplitude.
struct SweepConfig {
    std::vector<double> gammas;
    double amplitude = 1.0;
};

struct ExperimentConfig {
    int schema_version = 1;
    GridSpec grid;
    SymbolSpec symbol;
    std::optional<PotentialSpec> potential;
    std::optional<PacketConfig> packet;
    double dt = 0.05;
    TimesConfig times;
    std::vector<std::pair<double, double>> time_pairs;  // cauchy_gap schedule
    std::vector<Quantity> diagnostics;
    std::optional<std::pair<double, double>> fit_window;
    std::optional<std::string> expect;  // convergent | divergent
    std::optional<SweepConfig> sweep;
    std::optional<ConeConfig> cone;
    std::optional<std::string> output_dir;
    std::uint64_t seed = 0;
    ToleranceConfig tolerances;

    // Strict parse: unknown keys anywhere raise validation_error naming the key.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    // Cross-field rules: annulus inside the resolvable band, maximal relevant
    // speed times the horizon below L/2 (cone-fits-box), dt resolves the
    // potential, diagnostics/potential-family compatibility (pairing and the
    // divergence witness need long_range), dt divides the schedule where an
    // interacting evolution runs.  Throws validation_error.
    void validate() const;

    // Default fit window when none is configured: [max(10, t_first),
    // t_first + 0.9 * (t_last - t_first)] — drops the pre-asymptotic start
    // and the final 10% of the horizon.
    std::pair<double, double> effective_fit_window(const std::vector<double>& ts) const;

    std::string canonical_string() const;  // feeds the CSV params hash
    std::uint64_t params_hash() const;
};

} // namespace nlscat
