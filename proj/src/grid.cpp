#include "nlscat/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "nlscat/errors.hpp"

namespace nlscat {

GridSpec::GridSpec(int dim_, int points_per_dim_, double box_half_length_)
    : dim(dim_), points_per_dim(points_per_dim_), box_half_length(box_half_length_) {
    validate();
}

void GridSpec::validate() const {
    if (dim < 1 || dim > 3) throw validation_error("grid dim must be 1, 2 or 3");
    if (points_per_dim < 4 || (points_per_dim & (points_per_dim - 1)) != 0)
        throw validation_error("grid points_per_dim must be a power of two >= 4");
    if (!(box_half_length > 0.0) || !std::isfinite(box_half_length))
        throw validation_error("grid box_half_length must be positive and finite");
}

std::size_t GridSpec::total_points() const {
    std::size_t t = 1;
    for (int a = 0; a < dim; ++a) t *= static_cast<std::size_t>(points_per_dim);
    return t;
}

void GridSpec::unravel(std::size_t flat, int* idx) const {
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(points_per_dim));
        flat /= static_cast<std::size_t>(points_per_dim);
    }
}

double WavePacket::measure_weight() const {
    const double w = (space == Space::position) ? grid.spacing() : grid.xi_spacing();
    double out = 1.0;
    for (int a = 0; a < grid.dim; ++a) out *= w;
    return out;
}

double norm(const WavePacket& p) {
    double s = 0.0;
    for (const cplx& z : p.values) s += std::norm(z);
    return std::sqrt(s * p.measure_weight());
}

cplx inner_product(const WavePacket& a, const WavePacket& b) {
    if (!(a.grid == b.grid) || a.space != b.space)
        throw validation_error("inner product needs matching grids and representation");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * a.measure_weight();
}

} // namespace nlscat
