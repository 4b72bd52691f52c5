#include "nlscat/diagnostics.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/fourier.hpp"
#include "nlscat/packet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace nlscat {

namespace {

void require_positive_times(const std::vector<double>& times, const char* what) {
    if (times.empty())
        throw validation_error(std::string(what) + " needs a non-empty time grid");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw validation_error(std::string(what) + " needs strictly positive finite times");
        if (!(t > prev))
            throw validation_error(std::string(what) + " needs strictly increasing times");
        prev = t;
    }
}

// sqrt( sum_x V(x)^2 |phi(x)|^2 dx^n )
double weighted_norm(const WavePacket& p, const std::vector<double>& field) {
    const double w = p.measure_weight();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i)
        acc += field[i] * field[i] * std::norm(p.values[i]) * w;
    return std::sqrt(acc);
}

// Trapezoid integral of the piecewise-linear interpolant of (t, v) samples,
// clipped to [a, b].
double interp_integral(const std::vector<std::pair<double, double>>& s, double a, double b) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        double t0 = s[i].first, t1 = s[i + 1].first;
        double v0 = s[i].second, v1 = s[i + 1].second;
        double lo = std::max(t0, a), hi = std::min(t1, b);
        if (hi <= lo) continue;
        auto at = [&](double t) { return v0 + (v1 - v0) * (t - t0) / (t1 - t0); };
        acc += 0.5 * (at(lo) + at(hi)) * (hi - lo);
    }
    return acc;
}

// Frequency band [lo, hi] actually carrying mass: |phi_hat| above
// 1e-12 * peak.  Input packet may be in either representation.
std::pair<double, double> support_band(const WavePacket& p) {
    WavePacket ph = (p.space == Space::frequency) ? p : to_fourier(p);
    double peak = 0.0;
    for (const auto& v : ph.values) peak = std::max(peak, std::abs(v));
    const double cut = 1e-12 * peak;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<int> idx(ph.grid.dim);
    for (std::size_t i = 0; i < ph.values.size(); ++i) {
        if (std::abs(ph.values[i]) <= cut) continue;
        ph.grid.unravel(i, idx.data());
        double r2 = 0.0;
        for (int a = 0; a < ph.grid.dim; ++a) {
            double xi = ph.grid.xi(idx[a]);
            r2 += xi * xi;
        }
        double r = std::sqrt(r2);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    if (!(hi > 0.0))
        throw validation_error("packet has no frequency support above the noise floor");
    return {lo, hi};
}

// Free-flow sampler: caches the Fourier image once, then each sample costs a
// pointwise phase and one inverse transform.
class FreeFlow {
  public:
    FreeFlow(const WavePacket& phi, const SymbolSpec& symbol) : symbol_(symbol) {
        symbol_.validate();
        phat_ = (phi.space == Space::frequency) ? phi : to_fourier(phi);
        sigma_.resize(phat_.values.size());
        std::vector<int> idx(phat_.grid.dim);
        for (std::size_t i = 0; i < sigma_.size(); ++i) {
            phat_.grid.unravel(i, idx.data());
            double s = 0.0;
            for (int a = 0; a < phat_.grid.dim; ++a) {
                double xi = phat_.grid.xi(idx[a]);
                s += xi * xi;
            }
            sigma_[i] = eval_psi(symbol_, s);
        }
    }

    // Position-space state at time t.
    WavePacket at(double t) const {
        WavePacket cur = phat_;
        for (std::size_t i = 0; i < cur.values.size(); ++i)
            cur.values[i] *= std::polar(1.0, -t * sigma_[i]);
        return from_fourier(cur);
    }

    const GridSpec& grid() const { return phat_.grid; }

  private:
    SymbolSpec symbol_;
    WavePacket phat_;
    std::vector<double> sigma_;  // psi(|xi|^2) per cell
};

} // namespace

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::cook_integrand: return "cook_integrand";
        case Quantity::cone_mass_inside: return "cone_mass_inside";
        case Quantity::cauchy_gap: return "cauchy_gap";
        case Quantity::pairing: return "pairing";
        case Quantity::heisenberg_norm: return "heisenberg_norm";
        case Quantity::divergence_integral: return "divergence_integral";
    }
    throw validation_error("unknown diagnostic quantity");
}

Quantity parse_quantity(const std::string& name) {
    for (Quantity q : {Quantity::cook_integrand, Quantity::cone_mass_inside,
                       Quantity::cauchy_gap, Quantity::pairing,
                       Quantity::heisenberg_norm, Quantity::divergence_integral})
        if (name == quantity_name(q)) return q;
    throw validation_error("unknown diagnostic quantity: " + name);
}

FitAttempt fit_exponent(const TimeSeries& series, double window_lo, double window_hi) {
    if (!(window_lo < window_hi))
        throw validation_error("fit window must satisfy window_lo < window_hi");
    std::vector<std::pair<double, double>> win;
    int positive = 0;
    bool vetoed = false;
    for (const auto& [t, v] : series.samples) {
        if (t < window_lo || t > window_hi) continue;
        win.emplace_back(t, v);
        if (v > 0.0 && t > 0.0)
            ++positive;
        else
            vetoed = true;
    }
    if (positive < 8)
        throw validation_error("power-law fit needs at least 8 positive samples inside the window");
    FitAttempt out;
    if (vetoed) {
        out.note = "nonpositive samples inside the fit window; no power law";
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(win.size());
    for (const auto& [t, v] : win) {
        double x = std::log(t), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) {
        out.note = "fit window collapses to a single abscissa";
        return out;
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_tot = 0.0, ss_res = 0.0;
    const double ymean = sy / n;
    for (const auto& [t, v] : win) {
        double x = std::log(t), y = std::log(v);
        double yhat = intercept + slope * x;
        ss_tot += (y - ymean) * (y - ymean);
        ss_res += (y - yhat) * (y - yhat);
    }
    double r2;
    if (ss_tot < 1e-30) {
        // Constant series: exact fit with exponent 0.
        r2 = 1.0;
        out.r2 = r2;
        out.fit = Fit{0.0, std::exp(ymean), r2, window_lo, window_hi};
        return out;
    }
    r2 = 1.0 - ss_res / ss_tot;
    out.r2 = r2;
    if (r2 < 0.9) {
        out.note = "r2 below 0.9; the data do not follow a power law";
        return out;
    }
    out.fit = Fit{slope, std::exp(intercept), r2, window_lo, window_hi};
    return out;
}

TimeSeries cook_integrand_series(const WavePacket& phi, const SymbolSpec& symbol,
                                 const PotentialSpec& potential,
                                 const std::vector<double>& times) {
    require_positive_times(times, "cook integrand");
    potential.validate();
    FreeFlow flow(phi, symbol);
    const std::vector<double> V = sample_potential(potential, flow.grid());
    TimeSeries out;
    out.quantity = Quantity::cook_integrand;
    out.samples.reserve(times.size());
    for (double t : times)
        out.samples.emplace_back(t, weighted_norm(flow.at(t), V));
    return out;
}

TailClassification classify_tail(const TimeSeries& series, const Fit& fit, double dead_band) {
    if (!(dead_band >= 0.0))
        throw validation_error("dead band must be nonnegative");
    if (series.samples.size() < 4)
        throw validation_error("tail classification needs at least 4 samples");
    TailClassification out;
    out.fitted_exponent = fit.exponent;
    const double T = series.samples.back().first;
    const double near = interp_integral(series.samples, T / 4.0, T / 2.0);
    const double far = interp_integral(series.samples, T / 2.0, T);
    out.tail_ratio = (near > 0.0) ? far / near : std::numeric_limits<double>::infinity();
    if (std::abs(fit.exponent + 1.0) > dead_band) {
        out.by_ratio = false;
        out.verdict = (fit.exponent < -1.0) ? TailVerdict::convergent : TailVerdict::divergent;
    } else {
        // Exponent too close to the integrability edge: compare measured
        // dyadic tail integrals instead.  t^{-1.1} gives ratio 2^{-0.1}.
        out.by_ratio = true;
        out.verdict = (out.tail_ratio < std::pow(2.0, -dead_band)) ? TailVerdict::convergent
                                                                   : TailVerdict::divergent;
    }
    return out;
}

TimeSeries cauchy_gap_series(const WavePacket& phi, const EvolutionParams& params,
                             const std::vector<std::pair<double, double>>& time_pairs) {
    if (time_pairs.empty())
        throw validation_error("cauchy gap needs a non-empty list of time pairs");
    params.symbol.validate();
    if (params.potential) params.potential->validate();
    double prev = 0.0;
    for (const auto& [t1, t2] : time_pairs) {
        if (!(t1 > 0.0) || !(t2 > t1))
            throw validation_error("cauchy gap needs time pairs with 0 < t1 < t2");
        if (!(t1 > prev))
            throw validation_error("cauchy gap needs strictly increasing t1 across pairs");
        prev = t1;
    }
    FreeFlow flow(phi, params.symbol);
    TimeSeries out;
    out.quantity = Quantity::cauchy_gap;
    out.samples.reserve(time_pairs.size());
    for (const auto& [t1, t2] : time_pairs) {
        // || Omega(t2)phi - Omega(t1)phi || in reduced form: multiply through
        // by e^{-i t2 H} to get || psi_{t2} - U(t2-t1) psi_{t1} ||.
        WavePacket a = flow.at(t2);
        WavePacket b = full_evolve(flow.at(t1), params, t2 - t1);
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
        out.samples.emplace_back(t1, norm(a));
    }
    return out;
}

TimeSeries pairing_series(const WavePacket& phi, const SymbolSpec& symbol,
                          const PotentialSpec& potential,
                          const std::vector<double>& times) {
    potential.validate();
    if (potential.family != PotentialFamily::long_range)
        throw validation_error("pairing requires a long_range potential (V = kappa <x>^{-gamma})");
    require_positive_times(times, "pairing");
    if (times.front() < 1.0)
        throw validation_error("pairing lower bound needs times >= 1");
    FreeFlow flow(phi, symbol);
    const std::vector<double> V = sample_potential(potential, flow.grid());
    TimeSeries out;
    out.quantity = Quantity::pairing;
    out.samples.reserve(times.size());
    for (double t : times) {
        WavePacket cur = flow.at(t);
        const double w = cur.measure_weight();
        double acc = 0.0;
        for (std::size_t i = 0; i < cur.values.size(); ++i)
            acc += V[i] * std::norm(cur.values[i]) * w;
        // (1/kappa) Re (V phi_t, phi_t); positive since V/kappa > 0.
        out.samples.emplace_back(t, acc / potential.kappa);
    }
    return out;
}

BoundConstants build_bound_constants(const SymbolSpec& symbol,
                                     const PotentialSpec& potential,
                                     double eps, double R, int dim, int N) {
    symbol.validate();
    potential.validate();
    if (!(eps > 0.0) || !(R > eps) || !std::isfinite(R))
        throw validation_error("bound constants need a frequency band 0 < eps < R");
    if (dim < 1 || dim > 3)
        throw validation_error("bound constants need dim in {1, 2, 3}");
    if (N < 1)
        throw validation_error("bound constants need a decay order N >= 1");

    // Envelope trend on the band decides which edge is slow (the cone
    // threshold) and which is fast (Gamma).
    const int n = 513;
    double fast = 0.0;
    bool up = true, down = true;
    double prev = group_speed_envelope(symbol, eps);
    double vmax = std::abs(prev);
    std::vector<double> env(n);
    env[0] = prev;
    for (int i = 1; i < n; ++i) {
        double r = eps + (R - eps) * static_cast<double>(i) / (n - 1);
        env[i] = group_speed_envelope(symbol, r);
        vmax = std::max(vmax, std::abs(env[i]));
    }
    const double tol = 1e-12 * (1.0 + vmax);
    for (int i = 1; i < n; ++i) {
        if (env[i] < env[i - 1] - tol) up = false;
        if (env[i] > env[i - 1] + tol) down = false;
        fast = std::max(fast, env[i]);
    }
    fast = std::max(fast, env[0]);
    ConeMode direction;
    if (up)
        direction = ConeMode::increasing;
    else if (down)
        direction = ConeMode::decreasing;
    else
        throw validation_error(
            "bound constants need a monotone group speed envelope on the band");

    ConeThreshold th = cone_threshold(symbol, eps, R, direction);
    if (th.degenerate)
        throw validation_error(
            "cone threshold is degenerate (zero group speed); pairing constants are undefined");

    BoundConstants out;
    out.direction = direction;
    out.Gamma = std::max(4.0 * std::sqrt(static_cast<double>(dim)) * fast, 1.0);
    const double g = potential.gamma;
    out.c1 = 0.5 * std::pow(2.0 * out.Gamma, -g);
    out.c2 = 2.0 * std::pow(out.Gamma, -2.0 - g);
    out.c3 = potential.amplitude() * std::pow(th.speed, -g);
    out.c4 = 0.0;  // calibrated separately (lemma2_upper_check)
    out.N = N;
    return out;
}

OutsideMassCheck outside_mass_check(const WavePacket& phi, const SymbolSpec& symbol,
                                    double Gamma, const std::vector<double>& times) {
    if (!(Gamma > 0.0) || !std::isfinite(Gamma))
        throw validation_error("outside-mass check needs Gamma > 0");
    require_positive_times(times, "outside-mass check");
    WavePacket pos = (phi.space == Space::position) ? phi : from_fourier(phi);
    const double n2 = norm(pos) * norm(pos);
    const double xn = position_norm(pos);
    const double x2 = xn * xn;
    FreeFlow flow(pos, symbol);
    OutsideMassCheck out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (double t : times) {
        ConeMassResult cm = cone_mass(flow.at(t), Gamma, t);
        const double bound = 2.0 * x2 / (Gamma * t * Gamma * t) + 0.5 * n2;
        out.worst_margin = std::min(out.worst_margin, bound - cm.outside_mass);
    }
    out.ok = out.worst_margin >= -1e-12 * (1.0 + n2);
    return out;
}

Lemma2Report lemma2_upper_check(const WavePacket& phi, const SymbolSpec& symbol,
                                const PotentialSpec& potential,
                                const std::vector<double>& times, int N,
                                double calib_lo, double calib_hi, double c4_cap) {
    if (N < 2)
        throw validation_error("integrand envelope needs a remainder order N >= 2");
    TimeSeries series = cook_integrand_series(phi, symbol, potential, times);

    WavePacket pos = (phi.space == Space::position) ? phi : from_fourier(phi);
    const double nphi = norm(pos);
    const double wN = position_weighted_norm(pos, N);

    auto [eps, R] = support_band(pos);
    BoundConstants bc = build_bound_constants(symbol, potential, eps, R, pos.grid.dim, N);
    const double g = potential.gamma;

    if (!(calib_hi > calib_lo)) {
        // Default: calibrate on the first quarter of the sampled span.
        calib_lo = times.front();
        calib_hi = times.front() + 0.25 * (times.back() - times.front());
        calib_hi = std::max(calib_hi, times.size() > 1 ? times[1] : times[0]);
    }

    double c4 = 0.0;
    for (const auto& [t, v] : series.samples) {
        if (t < calib_lo || t > calib_hi) continue;
        const double residual = v - bc.c3 * std::pow(t, -g) * nphi;
        if (residual > 0.0)
            c4 = std::max(c4, residual * std::pow(t, static_cast<double>(N)) / wN);
    }
    if (c4 > c4_cap)
        throw std::runtime_error("integrand envelope calibration exceeded the constant cap");

    Lemma2Report out;
    out.c3 = bc.c3;
    out.c4 = c4;
    out.N = N;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& [t, v] : series.samples) {
        const double bound =
            bc.c3 * std::pow(t, -g) * nphi + c4 * std::pow(t, -static_cast<double>(N)) * wN;
        out.worst_margin = std::min(out.worst_margin, bound - v);
    }
    out.ok = out.worst_margin >= -1e-12 * (1.0 + bc.c3 * nphi);
    return out;
}

TimeSeries divergence_witness(const WavePacket& phi, const EvolutionParams& params,
                              const std::vector<double>& t_grid, double T) {
    require_positive_times(t_grid, "divergence witness");
    if (std::abs(T - t_grid.back()) > 1e-9 * std::max(1.0, std::abs(T)))
        throw validation_error("divergence witness needs T == max(t_grid)");
    if (!params.potential)
        throw validation_error(
            "divergence witness needs a potential; the free flow has trivial wave operators");
    params.symbol.validate();
    params.potential->validate();

    FreeFlow flow(phi, params.symbol);
    const double t1 = t_grid.front();
    // Reduced witness: multiply <Omega(t)phi - Omega(t1)phi, Omega(T)phi>
    // through by e^{-iTH}; the reference vector becomes the free state at T.
    const WavePacket target = flow.at(T);
    const WavePacket ref = full_evolve(flow.at(t1), params, T - t1);

    TimeSeries out;
    out.quantity = Quantity::divergence_integral;
    out.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        if (t == t1) {
            out.samples.emplace_back(t, 0.0);
            continue;
        }
        WavePacket cur = full_evolve(flow.at(t), params, T - t);
        for (std::size_t i = 0; i < cur.values.size(); ++i) cur.values[i] -= ref.values[i];
        out.samples.emplace_back(t, std::abs(inner_product(cur, target)));
    }
    return out;
}

TimeSeries propagation_estimate_series(const WavePacket& phi, const SymbolSpec& symbol,
                                       double speed, const std::vector<double>& times) {
    if (!(speed > 0.0) || !std::isfinite(speed))
        throw validation_error("propagation estimate needs a positive finite cone speed");
    require_positive_times(times, "propagation estimate");
    FreeFlow flow(phi, symbol);
    TimeSeries out;
    out.quantity = Quantity::cone_mass_inside;
    out.samples.reserve(times.size());
    for (double t : times) {
        ConeMassResult cm = cone_mass(flow.at(t), speed, t);
        out.samples.emplace_back(t, std::sqrt(std::max(cm.inside_mass, 0.0)));
    }
    return out;
}

TimeSeries propagation_estimate_series(const WavePacket& phi, const SymbolSpec& symbol,
                                       ConeMode direction, double eps, double R,
                                       const std::vector<double>& times, int N) {
    if (N < 1)
        throw validation_error("propagation decay order N must be >= 1");
    require_positive_times(times, "propagation estimate");
    ConeThreshold th = cone_threshold(symbol, eps, R, direction);
    if (th.degenerate)
        throw validation_error("cone threshold is degenerate (zero group speed); no propagation cone");
    const double L = phi.grid.box_half_length;
    if (!(th.speed * times.back() < 0.5 * L))
        throw validation_error(
            "cone threshold times horizon must stay below half the box radius; enlarge the grid");
    return propagation_estimate_series(phi, symbol, th.speed, times);
}

TimeSeries heisenberg_norm_series(const WavePacket& phi, const SymbolSpec& symbol,
                                  const std::vector<double>& times) {
    require_positive_times(times, "heisenberg norm");
    TimeSeries out;
    out.quantity = Quantity::heisenberg_norm;
    out.samples.reserve(times.size());
    for (double t : times)
        out.samples.emplace_back(t, heisenberg_position(phi, symbol, t).norm);
    return out;
}

} // namespace nlscat
