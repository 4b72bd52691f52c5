#pragma once
#include "nlscat/grid.hpp"

#include <string>

namespace nlscat {

// Band-limited bump supported on the frequency annulus eps <= |xi| <= R, with
// C^4 polynomial smoothstep edges of width smoothness * (R - eps).  In one
// dimension the packet is restricted to the half-line sign(center_momentum),
// so it is outgoing in that direction; center_momentum must lie inside the
// annulus.  Returned packet is position-space, L^2-normalized.
WavePacket make_annulus_packet(const GridSpec& grid, double eps, double R,
                               const std::vector<double>& center_momentum,
                               double smoothness);

// max |phi| over the outer shell max_a |x_a| >= L/2, relative to max |phi|.
// A constructed packet is effectively compactly supported only when this is
// tiny; experiment validation checks it against a configurable tolerance.
double boundary_tail_ratio(const WavePacket& p);

// || <x>^N p || with <x> = sqrt(1 + |x|^2); N = 0 gives ||p||.  Throws when
// the weight would overflow double range on this grid.
double position_weighted_norm(const WavePacket& p, int N);

struct ConeMassResult {
    double t = 0.0;
    double threshold_speed = 0.0;
    double inside_mass = 0.0;   // || 1_{|x| <= speed*t} p ||^2
    double outside_mass = 0.0;  // complement; inside + outside == ||p||^2 exactly
};

// L^2 mass split across the ball |x| <= speed * t.  The straddling cell is
// weighted by its fractional overlap along the cell width, which keeps the
// split stable under grid refinement.  Requires speed > 0, t > 0 and
// speed * t < L (the cone must fit inside the box).
ConeMassResult cone_mass(const WavePacket& p, double speed, double t);

// Raw binary snapshot (little-endian, fixed 32-byte header + Re/Im doubles).
void write_packet(const std::string& path, const WavePacket& p);
WavePacket read_packet(const std::string& path);  // validates header

// Plain-text snapshot: one row per grid point, coordinates then Re, Im.
void write_packet_csv(const std::string& path, const WavePacket& p);

} // namespace nlscat
