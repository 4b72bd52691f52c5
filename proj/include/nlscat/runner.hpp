#pragma once
#include "nlscat/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nlscat {

struct RunOutcome {
    bool pass = true;                       // verdict-level failures flip this
    std::string report;                     // human-readable summary
    std::vector<std::string> files_written;
};

// Executes every diagnostic named in the config against one shared packet,
// writes one CSV per series plus report.txt (class report, spectrum report,
// bound constants, fits, verdicts) under out_dir.  pass reflects the verdicts
// only; validation and runtime failures throw instead.
RunOutcome run(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose);

// Same as run(), after checking the config actually asks for the Cook
// integrand (the point of the subcommand).
RunOutcome run_cook(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose);

// One Cook experiment per sweep gamma (gamma > 1 short-range, gamma <= 1
// long-range), executed on a worker pool; the report assembles a dichotomy
// table and passes iff the convergent/divergent split happens exactly at
// gamma = 1 (and, when time_pairs are given, gaps shrink exactly for
// gamma > 1).
RunOutcome run_threshold_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                               int workers, bool verbose);

// Class + spectrum reports; adds the flat-band stationarity demo when the
// symbol has a flat band and a degenerate-threshold warning when the packet
// band carries zero group speed.
RunOutcome run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose);

// Certification summary for one symbol (no files; report only).
RunOutcome run_check_symbol(const SymbolSpec& symbol, double sigma_lo, double sigma_hi,
                            int n_samples, int k_max);

// Re-fits exponents from existing series CSVs without re-simulation, using
// each file's stored fit window; a refit must reproduce the stored fit
// bit-for-bit.  Non-series CSV files are skipped with a note.  A zero/empty
// window falls back to the stored one, then to the default window rule.
RunOutcome run_replay(const std::vector<std::string>& csv_paths, double window_lo,
                      double window_hi);

// Runs fn(i) for i in [0, count) on up to `workers` threads; the first
// exception wins and is rethrown on the caller after all threads join.
void parallel_for_indexed(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn);

} // namespace nlscat
