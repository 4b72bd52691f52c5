#pragma once
#include "nlscat/grid.hpp"

namespace nlscat {

// Unitary continuum-convention transforms between the two representations:
//   F(xi_k) = (dx/sqrt(2 pi))^dim * (-1)^{sum k_a} * DFT[phi]_k
//   phi(x_j) = (dxi/sqrt(2 pi))^dim * IDFT[(-1)^{sum k_a} F]_j
// The alternating sign is e^{+i xi_k L} per axis and accounts for the grid
// origin at -L; with it Parseval holds exactly: ||phi||_x = ||F||_xi.
WavePacket to_fourier(const WavePacket& p);    // requires position space
WavePacket from_fourier(const WavePacket& p);  // requires frequency space

// In-place kernels reused by the evolution loops (no packet copies).
void dft_forward(const GridSpec& g, cvec& data);   // position -> frequency
void dft_backward(const GridSpec& g, cvec& data);  // frequency -> position

} // namespace nlscat
