#pragma once
#include <string>
#include <vector>

namespace nlscat {

// Dispersion relation psi acting on sigma = |xi|^2.  The free generator is
// psi(|D|^2), i.e. a Fourier multiplier e^{-it psi(|xi|^2)}.
enum class SymbolKind { fractional, relativistic, logarithmic, flat_band, tabulated };

struct SymbolSpec {
    SymbolKind kind = SymbolKind::fractional;

    double rho = 1.0;      // fractional: psi(s) = s^rho, rho in (0, 2]
    double mass = 1.0;     // relativistic: psi(s) = sqrt(s + m^2) - m, m > 0
    double band_lo = 1.0;  // flat_band: psi constant on [band_lo, band_hi]
    double band_hi = 2.0;
    double band_level = 1.0;
    std::vector<double> knots_sigma;  // tabulated: monotone cubic through (sigma, value)
    std::vector<double> knots_value;

    static SymbolSpec fractional(double rho);
    static SymbolSpec relativistic(double mass);
    static SymbolSpec logarithmic();
    static SymbolSpec flat_band(double lo, double hi, double level);
    static SymbolSpec tabulated(std::vector<double> sigma, std::vector<double> value);

    void validate() const;  // throws std::invalid_argument
    std::string describe() const;
};

// Point evaluation.  sigma < 0 is outside the domain (throws std::domain_error).
double eval_psi(const SymbolSpec& spec, double sigma);
// d psi / d sigma.  May legitimately be +inf (e.g. s^rho with rho < 1 at 0).
double eval_psi_prime(const SymbolSpec& spec, double sigma);

// Radial group speed envelope at frequency radius sigma >= 0: psi'(sigma^2) * sigma.
// The pointwise group velocity of e^{-it psi(|D|^2)} is 2 psi'(|xi|^2) xi,
// i.e. twice this along xi/|xi|; the factor 2 is deliberately not folded in
// here, so cone thresholds derived from the envelope are one-sided.
double group_speed_envelope(const SymbolSpec& spec, double sigma);

// Weak monotonicity verdict for sampled data (constant data counts as
// increasing and is flagged separately where it matters).
enum class Trend { increasing, decreasing, neither };

// Which band edge anchors a propagation-cone threshold.
enum class ConeMode { increasing, decreasing, inf };

struct ConeThreshold {
    double speed = 0.0;      // threshold speed for the requested mode
    bool degenerate = false; // true when the threshold is (numerically) zero
    Trend envelope = Trend::increasing;   // sampled envelope behaviour on [eps, R]
    bool envelope_constant = false;
};

// Propagation-cone threshold for frequencies in [eps, R], 0 < eps < R.
//   increasing -> psi'(eps^2) eps   (requires a non-decreasing envelope)
//   decreasing -> psi'(R^2) R      (requires a non-increasing envelope)
//   inf        -> min of the envelope over a dense sample of [eps, R]
// Monotone modes throw validation_error when the sampled envelope disagrees.
ConeThreshold cone_threshold(const SymbolSpec& spec, double eps, double R, ConeMode mode);

// Sampling-based certificate of symbol class membership:
//  - nonnegative and non-decreasing (psi >= 0, psi' >= 0) on the sample grid;
//  - k-th forward differences of psi alternate in sign, (-1)^{k+1} D^k psi >= 0
//    (absolute tolerance 1e-8), for k = 1..k_max;
//  - monotonicity of the group speed envelope s -> psi'(s^2) s, with s ranging
//    over the same interval, by pairwise comparison of samples.
// A failed order is a certificate of non-membership; a passed order is only
// evidence (point samples cannot prove complete monotonicity).
struct ClassReport {
    bool in_tilde_B = false;     // psi >= 0 and psi' >= 0 at all samples
    int in_B_up_to_order = 0;    // largest k with verified sign alternation (orders nest)
    Trend psi_prime_sigma_monotone = Trend::neither;  // envelope verdict; constant -> increasing
    bool envelope_constant = false;
    int samples_used = 0;
    double sigma_lo = 0.0;       // the range the verdicts were sampled on
    double sigma_hi = 0.0;
    double worst_margin = 0.0;   // most negative signed difference seen across orders
};

ClassReport certify_classes(const SymbolSpec& spec, double sigma_lo, double sigma_hi,
                            int n_samples, int k_max);

const char* trend_name(Trend t);
const char* cone_mode_name(ConeMode m);
ConeMode parse_cone_mode(const std::string& name);  // throws validation_error

} // namespace nlscat
