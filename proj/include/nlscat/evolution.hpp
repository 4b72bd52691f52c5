#pragma once
#include "nlscat/grid.hpp"
#include "nlscat/potential.hpp"
#include "nlscat/symbol.hpp"

#include <optional>

namespace nlscat {

// Free propagator e^{-it psi(|D|^2)}: one forward/backward transform pair,
// exact up to rounding on the band-limited state.  Frequencies where the
// multiplier is not finite are tolerated only if the state carries no mass
// there (<= 1e-10 of total); otherwise throws std::runtime_error.
WavePacket free_evolve(const WavePacket& p, const SymbolSpec& symbol, double t);

enum class SplittingOrder { strang };

struct EvolutionParams {
    SymbolSpec symbol;
    std::optional<PotentialSpec> potential;  // absent means V == 0 (pure free motion)
    double dt = 0.05;
    SplittingOrder splitting_order = SplittingOrder::strang;
};

// Interacting propagator e^{-it(psi(|D|^2) + V)} via symmetric Strang
// splitting with fixed step dt; without a potential it reduces to the exact
// free propagator.  t may be negative (conjugate phases).  Requires |t| an
// integer multiple of dt (1e-9 relative) and dt * max|V| < 0.1 so the
// splitting error budget holds.
WavePacket full_evolve(const WavePacket& p, const EvolutionParams& params, double t);

// Heisenberg-evolved position observable applied to a state:
//   (x + 2 t psi'(|D|^2) D) p, returned per component.
// norm aggregates sqrt(sum_a ||component_a||^2); for free evolution this is
// conserved: ||(x + 2t psi' D) phi|| = ||x phi_t|| with phi_t = e^{-itH0} phi.
struct HeisenbergPosition {
    std::vector<WavePacket> components;
    double norm = 0.0;
};

HeisenbergPosition heisenberg_position(const WavePacket& p, const SymbolSpec& symbol,
                                       double t);

// || x p || (aggregate over components), position space.
double position_norm(const WavePacket& p);

} // namespace nlscat
