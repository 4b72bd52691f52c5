#pragma once
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace nlscat {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Uniform periodic box [-L, L)^dim with points_per_dim nodes per axis (a power
// of two).  Position nodes x_j = -L + j * dx, dx = 2L/n.  Frequency nodes
// follow the FFT layout: xi_k = k_signed * dxi with dxi = pi/L and k_signed in
// [-n/2, n/2), so the resolvable band is |xi_a| <= xi_max = pi n / (2L).
struct GridSpec {
    int dim = 1;
    int points_per_dim = 0;
    double box_half_length = 0.0;

    GridSpec() = default;
    GridSpec(int dim_, int points_per_dim_, double box_half_length_);

    void validate() const;

    double spacing() const { return 2.0 * box_half_length / points_per_dim; }
    double xi_spacing() const {
        return 3.141592653589793238462643383279502884 / box_half_length;
    }
    double xi_max() const { return xi_spacing() * (points_per_dim / 2); }
    std::size_t total_points() const;

    double coord(int j) const { return -box_half_length + j * spacing(); }
    // Signed frequency of FFT bin k on one axis.
    double xi(int k) const {
        return ((k < points_per_dim / 2) ? k : k - points_per_dim) * xi_spacing();
    }

    // Row-major decomposition of a flat index (last axis contiguous).
    void unravel(std::size_t flat, int* idx) const;

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && points_per_dim == o.points_per_dim &&
               box_half_length == o.box_half_length;
    }
};

enum class Space { position, frequency };

// A state sampled on the grid, in either representation.  Norms and inner
// products carry the continuum measure weight (dx^dim resp. dxi^dim), so
// to_fourier/from_fourier are exactly unitary.
struct WavePacket {
    GridSpec grid;
    Space space = Space::position;
    cvec values;

    std::size_t size() const { return values.size(); }
    double measure_weight() const;  // dx^dim or dxi^dim
};

double norm(const WavePacket& p);
// Conjugate-linear in the first argument: (a, b) = sum conj(a) b * weight.
cplx inner_product(const WavePacket& a, const WavePacket& b);

} // namespace nlscat
