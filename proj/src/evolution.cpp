#include "nlscat/evolution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlscat/errors.hpp"
#include "nlscat/fourier.hpp"

namespace nlscat {

namespace {

// Phase multipliers are built per node; cells where the multiplier fails to
// be finite (group-velocity singularities, overflow) are tolerated only when
// the state carries no mass there.
void guarded_multiply(cvec& freq, const std::vector<cplx>& mult, const char* what) {
    double total = 0.0, singular = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) {
        const double m = std::norm(freq[k]);
        total += m;
        if (!std::isfinite(mult[k].real()) || !std::isfinite(mult[k].imag())) singular += m;
    }
    if (singular > 1e-10 * total)
        throw std::runtime_error(std::string(what) +
                                 ": state has mass at a spectral singularity");
    for (std::size_t k = 0; k < freq.size(); ++k) {
        if (!std::isfinite(mult[k].real()) || !std::isfinite(mult[k].imag()))
            freq[k] = 0.0;
        else
            freq[k] *= mult[k];
    }
}

std::vector<double> sigma_table(const GridSpec& g) {
    std::vector<double> sig(g.total_points());
    int idx[3];
    for (std::size_t k = 0; k < sig.size(); ++k) {
        g.unravel(k, idx);
        double s = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double xi = g.xi(idx[a]);
            s += xi * xi;
        }
        sig[k] = s;
    }
    return sig;
}

}  // namespace

WavePacket free_evolve(const WavePacket& p, const SymbolSpec& symbol, double t) {
    symbol.validate();
    const auto sig = sigma_table(p.grid);
    std::vector<cplx> mult(sig.size());
    for (std::size_t k = 0; k < sig.size(); ++k) {
        const double ps = eval_psi(symbol, sig[k]);
        mult[k] = std::isfinite(ps) ? std::exp(cplx(0.0, -t * ps))
                                    : cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    }
    WavePacket out = p;
    if (p.space == Space::frequency) {
        guarded_multiply(out.values, mult, "free evolution");
        return out;
    }
    dft_forward(p.grid, out.values);
    guarded_multiply(out.values, mult, "free evolution");
    dft_backward(p.grid, out.values);
    return out;
}

WavePacket full_evolve(const WavePacket& p, const EvolutionParams& params, double t) {
    if (p.space != Space::position)
        throw validation_error("interacting evolution expects a position-space state");
    params.symbol.validate();
    if (!params.potential) return free_evolve(p, params.symbol, t);
    params.potential->validate();
    if (!(params.dt > 0.0)) throw validation_error("dt must be positive");
    if (t == 0.0) return p;

    const double steps_real = std::abs(t) / params.dt;
    const long long steps = std::llround(steps_real);
    if (steps < 1 || std::abs(steps * params.dt - std::abs(t)) > 1e-9 * std::max(1.0, std::abs(t)))
        throw validation_error("evolution time must be an integer multiple of dt");
    const double h = t / static_cast<double>(steps);

    const auto V = sample_potential(*params.potential, p.grid);
    double vmax = 0.0;
    for (double v : V) vmax = std::max(vmax, std::abs(v));
    if (params.dt * vmax >= 0.1)
        throw validation_error(
            "dt * max|V| must stay below 0.1; refine dt or weaken the potential");

    std::vector<cplx> half_v(V.size()), kin(V.size());
    for (std::size_t k = 0; k < V.size(); ++k)
        half_v[k] = std::exp(cplx(0.0, -0.5 * h * V[k]));
    const auto sig = sigma_table(p.grid);
    for (std::size_t k = 0; k < sig.size(); ++k) {
        const double ps = eval_psi(params.symbol, sig[k]);
        kin[k] = std::isfinite(ps) ? std::exp(cplx(0.0, -h * ps))
                                   : cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    }

    WavePacket out = p;
    for (long long s = 0; s < steps; ++s) {
        for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= half_v[k];
        dft_forward(p.grid, out.values);
        guarded_multiply(out.values, kin, "interacting evolution");
        dft_backward(p.grid, out.values);
        for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= half_v[k];
    }
    return out;
}

HeisenbergPosition heisenberg_position(const WavePacket& p, const SymbolSpec& symbol,
                                       double t) {
    if (p.space != Space::position)
        throw validation_error("heisenberg observable expects a position-space state");
    symbol.validate();

    WavePacket freq = to_fourier(p);
    const auto sig = sigma_table(p.grid);

    HeisenbergPosition out;
    out.components.reserve(p.grid.dim);
    double agg = 0.0;
    int idx[3];
    for (int a = 0; a < p.grid.dim; ++a) {
        // 2 t psi'(|xi|^2) xi_a in frequency, plus x_a in position
        std::vector<cplx> mult(sig.size());
        for (std::size_t k = 0; k < sig.size(); ++k) {
            p.grid.unravel(k, idx);
            const double m = 2.0 * t * eval_psi_prime(symbol, sig[k]) * p.grid.xi(idx[a]);
            mult[k] = std::isfinite(m) ? cplx(m, 0.0)
                                       : cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        }
        WavePacket comp = freq;
        guarded_multiply(comp.values, mult, "heisenberg observable");
        dft_backward(p.grid, comp.values);
        comp.space = Space::position;
        for (std::size_t k = 0; k < comp.values.size(); ++k) {
            p.grid.unravel(k, idx);
            comp.values[k] += p.grid.coord(idx[a]) * p.values[k];
        }
        agg += std::pow(norm(comp), 2);
        out.components.push_back(std::move(comp));
    }
    out.norm = std::sqrt(agg);
    return out;
}

double position_norm(const WavePacket& p) {
    if (p.space != Space::position)
        throw validation_error("position norm expects a position-space state");
    double s = 0.0;
    int idx[3];
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        p.grid.unravel(k, idx);
        double x2 = 0.0;
        for (int a = 0; a < p.grid.dim; ++a) {
            const double x = p.grid.coord(idx[a]);
            x2 += x * x;
        }
        s += x2 * std::norm(p.values[k]);
    }
    return std::sqrt(s * p.measure_weight());
}

} // namespace nlscat
