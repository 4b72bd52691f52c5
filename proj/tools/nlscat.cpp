// nlscat: CLI over the non-local dispersive scattering toolkit.
// Exit codes: 0 success, 1 verdict failure, 2 invalid input/config, 3 runtime failure.
#include "nlscat/config.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

std::string default_out_root() {
    const char* env = std::getenv("NLSCAT_OUT");
    return env && *env ? env : "./nlscat_out";
}

// Directories expand to their .csv files (sorted); plain paths pass through.
std::vector<std::string> expand_series_paths(const std::vector<std::string>& args) {
    namespace fs = std::filesystem;
    std::vector<std::string> out;
    for (const auto& a : args) {
        if (fs::is_directory(a)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(a)) {
                if (e.is_regular_file() && e.path().extension() == ".csv")
                    found.push_back(e.path().string());
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(a);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-local dispersive scattering diagnostics"};
    app.require_subcommand(1);

    std::string out_flag;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    bool verbose = false;
    auto* out_opt = app.add_option("--out", out_flag, "output directory (overrides config)");
    app.add_option("--workers", workers, "worker threads for sweeps (default: cores)");
    app.add_flag("--verbose", verbose, "chatty reports");

    // check-symbol
    auto* cs = app.add_subcommand("check-symbol", "certify a dispersion symbol");
    cs->fallthrough();
    std::string cs_kind;
    double cs_rho = 0.0, cs_mass = 0.0, cs_param = 1.0;
    double cs_blo = 1.0, cs_bhi = 2.0, cs_level = 1.0;
    std::vector<double> cs_ks, cs_kv;
    double cs_slo = 1e-2, cs_shi = 1e2;
    int cs_samples = 64, cs_kmax = 4;
    auto* rho_opt = cs->add_option("--rho", cs_rho, "shortcut: fractional symbol s^rho");
    auto* mass_opt = cs->add_option("--mass", cs_mass, "shortcut: relativistic symbol with mass");
    auto* kind_opt = cs->add_option(
        "--kind", cs_kind, "fractional|relativistic|logarithmic|flat_band|tabulated");
    cs->add_option("--param", cs_param, "rho (fractional) or mass (relativistic) with --kind");
    cs->add_option("--band-lo", cs_blo, "flat band lower edge (sigma)");
    cs->add_option("--band-hi", cs_bhi, "flat band upper edge (sigma)");
    cs->add_option("--level", cs_level, "flat band level");
    cs->add_option("--knots-sigma", cs_ks, "tabulated sigma knots");
    cs->add_option("--knots-value", cs_kv, "tabulated value knots");
    cs->add_option("--sigma-lo", cs_slo, "certification range lower edge");
    cs->add_option("--sigma-hi", cs_shi, "certification range upper edge");
    cs->add_option("--samples", cs_samples, "certification sample count (>= 16)");
    cs->add_option("--k-max", cs_kmax, "highest difference order to certify");

    // config-driven subcommands
    std::string config_path;
    auto add_config_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        return sub;
    };
    auto* sim = add_config_cmd("simulate", "run the configured diagnostics on one packet");
    auto* cook = add_config_cmd("cook", "integrand decay series, fit and verdict");
    auto* sweep = add_config_cmd("threshold-sweep", "cook dichotomy across decay exponents");
    auto* spec = add_config_cmd("spectrum", "spectral interval, zero set, flat-band demo");

    // replay
    auto* rep = app.add_subcommand("replay", "refit stored series files (bit-stable)");
    rep->fallthrough();
    std::vector<std::string> rep_args;
    std::vector<double> rep_window;
    rep->add_option("paths", rep_args, "series CSV files or directories")->required();
    rep->add_option("--window", rep_window, "fit window lo hi")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        nlscat::RunOutcome outcome;
        if (cs->parsed()) {
            nlscat::SymbolSpec symbol;
            const int shortcuts = (rho_opt->count() ? 1 : 0) + (mass_opt->count() ? 1 : 0) +
                                  (kind_opt->count() ? 1 : 0);
            if (shortcuts != 1)
                throw nlscat::validation_error(
                    "check-symbol needs exactly one of --rho, --mass, --kind");
            if (rho_opt->count()) {
                symbol = nlscat::SymbolSpec::fractional(cs_rho);
            } else if (mass_opt->count()) {
                symbol = nlscat::SymbolSpec::relativistic(cs_mass);
            } else if (cs_kind == "fractional") {
                symbol = nlscat::SymbolSpec::fractional(cs_param);
            } else if (cs_kind == "relativistic") {
                symbol = nlscat::SymbolSpec::relativistic(cs_param);
            } else if (cs_kind == "logarithmic") {
                symbol = nlscat::SymbolSpec::logarithmic();
            } else if (cs_kind == "flat_band") {
                symbol = nlscat::SymbolSpec::flat_band(cs_blo, cs_bhi, cs_level);
            } else if (cs_kind == "tabulated") {
                symbol = nlscat::SymbolSpec::tabulated(cs_ks, cs_kv);
            } else {
                throw nlscat::validation_error("unknown symbol kind: " + cs_kind);
            }
            outcome = nlscat::run_check_symbol(symbol, cs_slo, cs_shi, cs_samples, cs_kmax);
        } else if (rep->parsed()) {
            const double lo = rep_window.size() == 2 ? rep_window[0] : 0.0;
            const double hi = rep_window.size() == 2 ? rep_window[1] : 0.0;
            outcome = nlscat::run_replay(expand_series_paths(rep_args), lo, hi);
        } else {
            const nlscat::ExperimentConfig cfg = nlscat::ExperimentConfig::from_file(config_path);
            const std::string out_dir = out_opt->count()      ? out_flag
                                        : cfg.output_dir      ? *cfg.output_dir
                                                              : default_out_root();
            if (sim->parsed())
                outcome = nlscat::run(cfg, out_dir, verbose);
            else if (cook->parsed())
                outcome = nlscat::run_cook(cfg, out_dir, verbose);
            else if (sweep->parsed())
                outcome = nlscat::run_threshold_sweep(cfg, out_dir, workers, verbose);
            else if (spec->parsed())
                outcome = nlscat::run_spectrum(cfg, out_dir, verbose);
        }
        std::cout << outcome.report;
        return outcome.pass ? 0 : 1;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
