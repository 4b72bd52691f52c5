#pragma once
#include "nlscat/grid.hpp"

#include <string>
#include <vector>

namespace nlscat {

// Static real multiplication operators V(x) with a declared decay envelope
// |V(x)| <= const * <x>^{-gamma}, <x> = sqrt(1 + |x|^2).
//   short_range: gamma > 1 strictly (integrable Cook tail), amplitude C > 0.
//     exact_power  V(x) = C <x>^{-gamma}
//     compact_bump V(x) = C exp(gamma (1 - 1/(1 - |x|^2))) for |x| < 1, else 0;
//                  the gamma-powered exponent keeps V below C <x>^{-gamma}
//                  everywhere (u/(1-u) >= log(1+u)/2 on [0,1)).
//   long_range : V(x) = kappa <x>^{-gamma}, gamma in (0, 1], kappa != 0.
enum class PotentialFamily { short_range, long_range };
enum class PotentialProfile { exact_power, compact_bump };

struct PotentialSpec {
    PotentialFamily family = PotentialFamily::short_range;
    PotentialProfile profile = PotentialProfile::exact_power;
    double C = 0.0;      // short-range amplitude, > 0
    double kappa = 0.0;  // long-range coupling, != 0
    double gamma = 2.0;  // decay exponent (gamma_s resp. gamma_l)

    static PotentialSpec short_range(double C, double gamma_s,
                                     PotentialProfile profile = PotentialProfile::exact_power);
    static PotentialSpec long_range(double kappa, double gamma_l);

    // Declared sup-norm bound: |C| resp. |kappa| (attained at x = 0).
    double amplitude() const;

    void validate() const;  // throws validation_error with the violated rule
    std::string describe() const;
};

double eval_potential(const PotentialSpec& spec, const std::vector<double>& x);

// Samples on the grid's position nodes, flat row-major layout.
std::vector<double> sample_potential(const PotentialSpec& spec, const GridSpec& grid);

struct DecayCheck {
    bool ok = false;
    double worst_ratio = 0.0;          // max |V(x)| <x>^{gamma} / amplitude over the grid
    std::size_t worst_index = 0;       // flat index of the worst point
    std::vector<double> worst_point;   // its coordinates
    explicit operator bool() const { return ok; }
};

// Verifies |V(x)| <= amplitude * <x>^{-gamma} at every grid point for the
// declared (amplitude, gamma).  The three-argument form checks a given field
// (guards transcription errors when fields are edited or replayed from disk);
// the two-argument form samples the potential itself first.
DecayCheck decay_bound_check(const PotentialSpec& spec, const GridSpec& grid,
                             const std::vector<double>& samples);
DecayCheck decay_bound_check(const PotentialSpec& spec, const GridSpec& grid);

} // namespace nlscat
