#include "nlscat/packet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "nlscat/errors.hpp"
#include "nlscat/fourier.hpp"

namespace nlscat {

namespace {

// C^4 polynomial smoothstep: 0 below 0, 1 above 1, first four derivatives
// vanish at both ends.  Edge regularity controls the spatial tail order.
double smoothstep4(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * u * u * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))));
}

constexpr char kMagic[8] = {'N', 'L', 'S', 'P', 'K', 'T', '1', '\0'};

}  // namespace

WavePacket make_annulus_packet(const GridSpec& grid, double eps, double R,
                               const std::vector<double>& center_momentum,
                               double smoothness) {
    grid.validate();
    if (!(0.0 < eps && eps < R))
        throw validation_error("annulus needs 0 < eps < R");
    if (R >= grid.xi_max())
        throw validation_error("annulus outside grid: R must stay below the resolvable band xi_max");
    if (static_cast<int>(center_momentum.size()) != grid.dim)
        throw validation_error("center_momentum dimension does not match the grid");
    double c2 = 0.0;
    for (double c : center_momentum) c2 += c * c;
    const double cr = std::sqrt(c2);
    if (!(eps < cr && cr < R))
        throw validation_error("center_momentum must lie inside the annulus");
    if (!(smoothness > 0.0) || !std::isfinite(smoothness))
        throw validation_error("smoothness must be positive and finite");

    const double width = smoothness * (R - eps);
    WavePacket f;
    f.grid = grid;
    f.space = Space::frequency;
    f.values.assign(grid.total_points(), 0.0);

    int idx[3];
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        grid.unravel(k, idx);
        double r2 = 0.0;
        double xi0 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double xa = grid.xi(idx[a]);
            if (a == 0) xi0 = xa;
            r2 += xa * xa;
        }
        const double r = std::sqrt(r2);
        // In 1D the packet travels one way: keep only the half-line that
        // contains the center momentum.
        if (grid.dim == 1 && xi0 * center_momentum[0] <= 0.0) continue;
        const double w =
            smoothstep4((r - eps) / width) * smoothstep4((R - r) / width);
        f.values[k] = w;
    }

    WavePacket p = from_fourier(f);
    const double nrm = norm(p);
    if (!(nrm > 0.0))
        throw validation_error("annulus window is empty on this grid");
    for (cplx& z : p.values) z /= nrm;
    return p;
}

double boundary_tail_ratio(const WavePacket& p) {
    if (p.space != Space::position)
        throw validation_error("boundary tail is a position-space quantity");
    const double half = p.grid.box_half_length / 2.0;
    double peak = 0.0, shell = 0.0;
    int idx[3];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const double a = std::abs(p.values[k]);
        peak = std::max(peak, a);
        p.grid.unravel(k, idx);
        double linf = 0.0;
        for (int ax = 0; ax < p.grid.dim; ++ax)
            linf = std::max(linf, std::abs(p.grid.coord(idx[ax])));
        if (linf >= half) shell = std::max(shell, a);
    }
    if (peak == 0.0) return 0.0;
    return shell / peak;
}

double position_weighted_norm(const WavePacket& p, int N) {
    if (p.space != Space::position)
        throw validation_error("weighted norm is a position-space quantity");
    if (N < 0) throw validation_error("weight order must be >= 0");
    const double L = p.grid.box_half_length;
    if (N * std::log1p(p.grid.dim * L * L) > 700.0)
        throw validation_error("position weight overflows double range on this grid");
    double s = 0.0;
    int idx[3];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        p.grid.unravel(k, idx);
        double x2 = 0.0;
        for (int ax = 0; ax < p.grid.dim; ++ax) {
            const double x = p.grid.coord(idx[ax]);
            x2 += x * x;
        }
        s += std::pow(1.0 + x2, N) * std::norm(p.values[k]);
    }
    return std::sqrt(s * p.measure_weight());
}

ConeMassResult cone_mass(const WavePacket& p, double speed, double t) {
    if (p.space != Space::position)
        throw validation_error("cone mass is a position-space quantity");
    if (!(speed > 0.0)) throw validation_error("cone speed must be > 0");
    if (!(t > 0.0)) throw validation_error("cone time must be > 0");
    const double r = speed * t;
    if (!(r < p.grid.box_half_length))
        throw std::runtime_error("cone radius speed*t reaches the box boundary; "
                                 "enlarge the grid or shorten the horizon");
    const double dx = p.grid.spacing();
    ConeMassResult out;
    out.t = t;
    out.threshold_speed = speed;
    int idx[3];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        p.grid.unravel(k, idx);
        double x2 = 0.0;
        for (int ax = 0; ax < p.grid.dim; ++ax) {
            const double x = p.grid.coord(idx[ax]);
            x2 += x * x;
        }
        const double rad = std::sqrt(x2);
        // fractional overlap of the cell straddling |x| = r
        const double lo = std::max(rad - 0.5 * dx, 0.0);
        const double wgt = std::clamp((r - lo) / dx, 0.0, 1.0);
        const double m = std::norm(p.values[k]);
        out.inside_mass += wgt * m;
        out.outside_mass += (1.0 - wgt) * m;
    }
    const double w = p.measure_weight();
    out.inside_mass *= w;
    out.outside_mass *= w;
    return out;
}

void write_packet(const std::string& path, const WavePacket& p) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open packet file for writing: " + path);
    char header[32] = {};
    std::memcpy(header, kMagic, 8);
    const std::uint32_t dim = static_cast<std::uint32_t>(p.grid.dim);
    const std::uint32_t n = static_cast<std::uint32_t>(p.grid.points_per_dim);
    std::memcpy(header + 8, &dim, 4);
    std::memcpy(header + 12, &n, 4);
    std::memcpy(header + 16, &p.grid.box_half_length, 8);
    header[24] = (p.space == Space::frequency) ? 1 : 0;
    os.write(header, sizeof header);
    for (const cplx& z : p.values) {
        const double re = z.real(), im = z.imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
    }
    if (!os) throw std::runtime_error("short write on packet file: " + path);
}

WavePacket read_packet(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open packet file: " + path);
    char header[32];
    is.read(header, sizeof header);
    if (!is || std::memcmp(header, kMagic, 8) != 0)
        throw std::runtime_error("not a packet file (bad magic): " + path);
    std::uint32_t dim = 0, n = 0;
    double L = 0.0;
    std::memcpy(&dim, header + 8, 4);
    std::memcpy(&n, header + 12, 4);
    std::memcpy(&L, header + 16, 8);
    if (header[24] != 0 && header[24] != 1)
        throw std::runtime_error("packet file has an invalid representation flag: " + path);

    WavePacket p;
    p.grid.dim = static_cast<int>(dim);
    p.grid.points_per_dim = static_cast<int>(n);
    p.grid.box_half_length = L;
    try {
        p.grid.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error("packet file header is inconsistent: " + std::string(e.what()));
    }
    p.space = header[24] ? Space::frequency : Space::position;
    p.values.resize(p.grid.total_points());
    for (cplx& z : p.values) {
        double re = 0.0, im = 0.0;
        is.read(reinterpret_cast<char*>(&re), 8);
        is.read(reinterpret_cast<char*>(&im), 8);
        z = cplx(re, im);
    }
    if (!is) throw std::runtime_error("packet file truncated: " + path);
    is.peek();
    if (!is.eof()) throw std::runtime_error("packet file has trailing bytes: " + path);
    return p;
}

void write_packet_csv(const std::string& path, const WavePacket& p) {
    std::ofstream os(path, std::ios::binary);  // binary: LF line endings everywhere
    if (!os) throw std::runtime_error("cannot open packet CSV for writing: " + path);
    const bool freq = p.space == Space::frequency;
    for (int a = 0; a < p.grid.dim; ++a) os << (freq ? "xi" : "x") << a + 1 << ",";
    os << "re,im\n";
    char buf[64];
    int idx[3];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        p.grid.unravel(k, idx);
        for (int a = 0; a < p.grid.dim; ++a) {
            const double c = freq ? p.grid.xi(idx[a]) : p.grid.coord(idx[a]);
            std::snprintf(buf, sizeof buf, "%.17g,", c);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.values[k].real(), p.values[k].imag());
        os << buf;
    }
    if (!os) throw std::runtime_error("short write on packet CSV: " + path);
}

} // namespace nlscat
