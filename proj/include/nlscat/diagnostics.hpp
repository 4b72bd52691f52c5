#pragma once
#include "nlscat/evolution.hpp"
#include "nlscat/grid.hpp"
#include "nlscat/potential.hpp"
#include "nlscat/symbol.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nlscat {

enum class Quantity {
    cook_integrand,
    cone_mass_inside,
    cauchy_gap,
    pairing,
    heisenberg_norm,
    divergence_integral,
};

const char* quantity_name(Quantity q);
Quantity parse_quantity(const std::string& name);  // throws validation_error

// Least-squares power-law fit value ~ prefactor * t^exponent on log-log axes.
struct Fit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r2 = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

struct TimeSeries {
    Quantity quantity = Quantity::cook_integrand;
    std::vector<std::pair<double, double>> samples;  // (t, value), t increasing
    std::optional<Fit> fit;                          // attached by the caller
};

struct FitAttempt {
    std::optional<Fit> fit;  // absent when r2 < 0.9 (the fit would be a lie)
    double r2 = 0.0;
    std::string note;        // reason when absent
};

// Requires at least 8 strictly positive samples inside [window_lo, window_hi]
// (throws validation_error otherwise).  Samples with value <= 0 inside the
// window veto the fit (returned absent) rather than being silently dropped.
FitAttempt fit_exponent(const TimeSeries& series, double window_lo, double window_hi);

// ||V phi_t|| along the free evolution phi_t = e^{-itH0} phi.  The Fourier
// image of phi is cached once; each sample costs one inverse transform.
TimeSeries cook_integrand_series(const WavePacket& phi, const SymbolSpec& symbol,
                                 const PotentialSpec& potential,
                                 const std::vector<double>& times);

// Integrability verdict for the Cook integrand: power tails t^p with p < -1
// integrate, p > -1 do not.  Within a dead band of 0.1 around -1 the fitted
// exponent is too close to call and the verdict falls back to comparing the
// measured trapezoid tail integrals over [T/4, T/2] vs [T/2, T]; an exact
// t^{-1.1} tail gives ratio 2^{-0.1}, which is the threshold.
enum class TailVerdict { convergent, divergent };

struct TailClassification {
    TailVerdict verdict = TailVerdict::divergent;
    double fitted_exponent = 0.0;
    double tail_ratio = 0.0;   // I[T/2,T] / I[T/4,T/2]
    bool by_ratio = false;     // true when the dead band forced the ratio rule
};

TailClassification classify_tail(const TimeSeries& series, const Fit& fit,
                                 double dead_band = 0.1);

// || psi_{t2} - U(t2-t1) psi_{t1} || with psi_s the free flow and U the
// interacting flow: the Cauchy increment of the wave-operator family
// e^{itH} e^{-itH0} phi between t1 and t2, evaluated in its unitarily
// reduced form (multiply by e^{-i t2 H}).  Sample time recorded is t1.
TimeSeries cauchy_gap_series(const WavePacket& phi, const EvolutionParams& params,
                             const std::vector<std::pair<double, double>>& time_pairs);

// (1/kappa) Re (V phi_t, phi_t) along the free flow: the pairing whose lower
// bound drives the long-range divergence mechanism; positive by construction
// since V/kappa > 0.  Requires a long-range potential and times >= 1.
TimeSeries pairing_series(const WavePacket& phi, const SymbolSpec& symbol,
                          const PotentialSpec& potential,
                          const std::vector<double>& times);

// Constants for the two-sided pairing bounds on a band-limited state:
//   Gamma = max(4 sqrt(dim) * s_fast, 1), s_fast the fastest envelope speed
//   on the band; c1 = (1/2) (2 Gamma)^{-gamma}; c2 = 2 Gamma^{-2-gamma};
//   c3 = |kappa| * s_slow^{-gamma}, s_slow the direction-consistent cone
//   threshold.  c4 is not explicit; it stays 0 until calibrated (see
//   lemma2_upper_check).  direction reports which band edge is slow.
struct BoundConstants {
    double Gamma = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    int N = 0;
    ConeMode direction = ConeMode::increasing;
};

BoundConstants build_bound_constants(const SymbolSpec& symbol,
                                     const PotentialSpec& potential,
                                     double eps, double R, int dim, int N = 3);

// Spatial mass bound at radius Gamma*t:
//   || 1_{|x| > Gamma t} phi_t ||^2 <= (2/(Gamma t)^2) ||x phi||^2 + (1/2)||phi||^2
// evaluated alongside the measured outside mass; records the worst margin.
struct OutsideMassCheck {
    bool ok = false;
    double worst_margin = 0.0;  // min over t of bound - measured
};

OutsideMassCheck outside_mass_check(const WavePacket& phi, const SymbolSpec& symbol,
                                    double Gamma, const std::vector<double>& times);

// Upper envelope ||V phi_t|| <= c3 t^{-gamma} ||phi|| + c4 t^{-N} ||<x>^N phi||.
// c4 is calibrated on an early-time window (default: the first quarter of the
// sampled span) and then required to dominate on the full series; calibration
// failure (c4 beyond cap) throws std::runtime_error.
struct Lemma2Report {
    double c3 = 0.0;
    double c4 = 0.0;
    int N = 0;
    bool ok = false;
    double worst_margin = 0.0;  // min over t of bound - measured
};

Lemma2Report lemma2_upper_check(const WavePacket& phi, const SymbolSpec& symbol,
                                const PotentialSpec& potential,
                                const std::vector<double>& times, int N,
                                double calib_lo = 0.0, double calib_hi = 0.0,
                                double c4_cap = 1e12);

// |(Omega(t) phi - Omega(t1) phi, Omega(T) phi)| with Omega(t) the
// wave-operator family e^{itH} e^{-itH0} and t1 = min(t_grid), evaluated in
// the unitarily reduced form (multiply through by e^{-iTH}):
//   |(U(T-t) psi_t - U(T-t1) psi_{t1}, psi_T)|.
// Growth of this witness along t certifies that the family has no Cauchy
// limit.  Requires T == max(t_grid).
TimeSeries divergence_witness(const WavePacket& phi, const EvolutionParams& params,
                              const std::vector<double>& t_grid, double T);

// sqrt of the inside-cone mass || 1_{|x| <= speed t} phi_t || along the free
// flow below the cone_threshold speed for the given mode: the quantity with
// super-polynomial decay (faster than t^{-N} for every certified N).  The
// threshold must satisfy speed * max(times) < L/2; N >= 1 names the decay
// order the caller intends to certify (the series itself is N-independent).
TimeSeries propagation_estimate_series(const WavePacket& phi, const SymbolSpec& symbol,
                                       ConeMode direction, double eps, double R,
                                       const std::vector<double>& times, int N);
// Raw-speed variant (also used by falsification controls).
TimeSeries propagation_estimate_series(const WavePacket& phi, const SymbolSpec& symbol,
                                       double speed, const std::vector<double>& times);

// || (x + 2t psi'(|D|^2) D) phi || sampled over times.
TimeSeries heisenberg_norm_series(const WavePacket& phi, const SymbolSpec& symbol,
                                  const std::vector<double>& times);

} // namespace nlscat
