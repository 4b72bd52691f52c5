#pragma once
#include "nlscat/grid.hpp"
#include "nlscat/symbol.hpp"

#include <vector>

namespace nlscat {

// Essential range of psi over sigma >= 0 (the spectrum of psi(|D|^2)),
// computed from the two monotone limits.  Requires a symbol certified
// nonnegative and non-decreasing; throws validation_error otherwise.
struct SpectralInterval {
    double lower = 0.0;
    double upper = 0.0;          // meaningful only when !unbounded_above
    bool unbounded_above = true;
};

SpectralInterval spectral_interval(const SymbolSpec& spec);

// Zero set of psi' on [sigma_lo, sigma_hi]: where the group speed degenerates.
enum class ZeroSetKind { empty, discrete, contains_interval };

struct ZeroSetResult {
    ZeroSetKind kind = ZeroSetKind::empty;
    std::vector<double> points;                          // refined isolated zeros
    std::vector<std::pair<double, double>> intervals;    // refined flat stretches
};

// Samples psi' on a uniform grid (n_samples >= 64), flags runs of at least
// three consecutive sub-tolerance samples spanning >= 1e-3 of the range as
// intervals (endpoints bisected), and golden-section-refines interior local
// minima to catch isolated zeros the sampling straddles.
ZeroSetResult detect_zero_set(const SymbolSpec& spec, double sigma_lo, double sigma_hi,
                              int n_samples = 256);

enum class SpectrumVerdict { absolutely_continuous, has_infinite_multiplicity_eigenvalue };

// Full spectral summary: interval, zero-set classification over the scanned
// range, and the dichotomy verdict (an eigenvalue of infinite multiplicity
// exists exactly when the zero set contains an interval).  The verdict is a
// sampling proxy, not a proof.
struct SpectrumReport {
    double lower = 0.0;
    double upper = 0.0;
    bool unbounded_above = true;
    ZeroSetKind zero_set_kind = ZeroSetKind::empty;
    ZeroSetResult zero_set;
    SpectrumVerdict verdict = SpectrumVerdict::absolutely_continuous;
};

SpectrumReport build_spectrum_report(const SymbolSpec& spec, double sigma_lo,
                                     double sigma_hi, int n_samples = 256);

// Stationarity of the normalized indicator state of the frequency shell
// sigma_lo <= |xi|^2 <= sigma_hi under e^{-it psi(|D|^2)}, against the pure
// phase e^{-it psi(sigma_mid)}.  On a flat band the defect is rounding-level:
// every shell state is an eigenvector with eigenvalue psi(sigma_mid).
struct FlatBandDemo {
    double defect = 0.0;        // max_t || e^{-itH0} u - e^{-it psi_mid} u ||
    double predicted = 0.0;     // same quantity from the multiplier directly
    std::size_t mode_count = 0; // frequency nodes in the shell
    std::vector<double> times;
};

FlatBandDemo shell_stationarity_defect(const SymbolSpec& spec, const GridSpec& grid,
                                       double sigma_lo, double sigma_hi,
                                       std::vector<double> times = {1.0, 10.0, 100.0});

// The shell is the symbol's own flat band; requires kind == flat_band and a
// grid resolving >= 10 shell modes.  Times fixed to {1, 10, 100}.
FlatBandDemo flat_band_eigen_demo(const SymbolSpec& spec, const GridSpec& grid);

} // namespace nlscat
