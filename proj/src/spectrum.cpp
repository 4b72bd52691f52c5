#include "nlscat/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlscat/errors.hpp"
#include "nlscat/evolution.hpp"
#include "nlscat/fourier.hpp"

namespace nlscat {

namespace {

// Cheap membership gate: nonnegative, non-decreasing on a sampled range
// appropriate to the kind (the interval formula needs monotonicity).
void require_monotone_nonnegative(const SymbolSpec& spec) {
    double lo = 1e-2, hi = 1e2;
    if (spec.kind == SymbolKind::tabulated) {
        hi = spec.knots_sigma.back();
        lo = std::max(spec.knots_sigma.front(), 1e-3 * hi);
        if (!(lo < hi)) lo = 0.5 * hi;
    }
    const ClassReport rep = certify_classes(spec, lo, hi, 64, 1);
    if (!rep.in_tilde_B)
        throw validation_error(
            "spectral interval needs a nonnegative, non-decreasing symbol; certification failed");
}

}  // namespace

SpectralInterval spectral_interval(const SymbolSpec& spec) {
    spec.validate();
    require_monotone_nonnegative(spec);
    SpectralInterval rep;
    switch (spec.kind) {
        case SymbolKind::fractional:
        case SymbolKind::relativistic:
        case SymbolKind::logarithmic:
        case SymbolKind::flat_band:
            rep.lower = 0.0;  // psi(0+) = 0 for all four closed forms
            rep.unbounded_above = true;
            break;
        case SymbolKind::tabulated:
            // clamped extension: range is exactly the knot value span
            rep.lower = spec.knots_value.front();
            rep.upper = spec.knots_value.back();
            rep.unbounded_above = false;
            break;
    }
    return rep;
}

namespace {

double golden_min(const SymbolSpec& spec, double a, double b, double* argmin) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::abs(eval_psi_prime(spec, x1)), f2 = std::abs(eval_psi_prime(spec, x2));
    for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(b)); ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::abs(eval_psi_prime(spec, x1));
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::abs(eval_psi_prime(spec, x2));
        }
    }
    *argmin = 0.5 * (a + b);
    return std::min(f1, f2);
}

double bisect_edge(const SymbolSpec& spec, double inside, double outside, double tol) {
    // boundary of { psi' <= tol } between a sub-tolerance and a super-tolerance point
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (inside + outside);
        if (std::abs(eval_psi_prime(spec, mid)) <= tol)
            inside = mid;
        else
            outside = mid;
    }
    return 0.5 * (inside + outside);
}

}  // namespace

ZeroSetResult detect_zero_set(const SymbolSpec& spec, double sigma_lo, double sigma_hi,
                              int n_samples) {
    spec.validate();
    if (!(0.0 <= sigma_lo && sigma_lo < sigma_hi))
        throw validation_error("zero-set scan needs 0 <= sigma_lo < sigma_hi");
    if (n_samples < 64) throw validation_error("zero-set scan needs >= 64 samples");

    const double range = sigma_hi - sigma_lo;
    std::vector<double> sig(n_samples), dp(n_samples);
    double pmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        sig[i] = sigma_lo + range * i / (n_samples - 1);
        dp[i] = std::abs(eval_psi_prime(spec, sig[i]));
        if (std::isfinite(dp[i])) pmax = std::max(pmax, dp[i]);
    }
    const double tol = 1e-8 * (1.0 + pmax);
    const double min_span = 1e-3 * range;

    ZeroSetResult rep;
    std::vector<bool> in_interval(n_samples, false);

    // flat stretches: runs of >= 3 sub-tolerance samples of non-trivial span
    int run_start = -1;
    for (int i = 0; i <= n_samples; ++i) {
        const bool below = (i < n_samples) && dp[i] <= tol;
        if (below && run_start < 0) run_start = i;
        if (!below && run_start >= 0) {
            const int run_end = i - 1;
            if (run_end - run_start + 1 >= 3 && sig[run_end] - sig[run_start] >= min_span) {
                double lo = sig[run_start];
                double hi = sig[run_end];
                if (run_start > 0) lo = bisect_edge(spec, sig[run_start], sig[run_start - 1], tol);
                if (run_end + 1 < n_samples) hi = bisect_edge(spec, sig[run_end], sig[run_end + 1], tol);
                rep.intervals.emplace_back(lo, hi);
                for (int j = run_start; j <= run_end; ++j) in_interval[j] = true;
            }
            run_start = -1;
        }
    }

    // isolated zeros: refine interior local minima of |psi'| that sampling straddles
    for (int i = 1; i + 1 < n_samples; ++i) {
        if (in_interval[i]) continue;
        if (dp[i] <= dp[i - 1] && dp[i] <= dp[i + 1]) {
            double where = sig[i];
            const double fmin = golden_min(spec, sig[i - 1], sig[i + 1], &where);
            if (fmin <= tol) {
                bool covered = false;
                for (const auto& iv : rep.intervals)
                    covered |= (where >= iv.first - min_span && where <= iv.second + min_span);
                for (double pt : rep.points) covered |= std::abs(pt - where) < min_span;
                if (!covered) rep.points.push_back(where);
            }
        }
    }
    std::sort(rep.points.begin(), rep.points.end());

    if (!rep.intervals.empty())
        rep.kind = ZeroSetKind::contains_interval;
    else if (!rep.points.empty())
        rep.kind = ZeroSetKind::discrete;
    else
        rep.kind = ZeroSetKind::empty;
    return rep;
}

SpectrumReport build_spectrum_report(const SymbolSpec& spec, double sigma_lo,
                                     double sigma_hi, int n_samples) {
    SpectrumReport rep;
    const SpectralInterval iv = spectral_interval(spec);
    rep.lower = iv.lower;
    rep.upper = iv.upper;
    rep.unbounded_above = iv.unbounded_above;
    rep.zero_set = detect_zero_set(spec, sigma_lo, sigma_hi, n_samples);
    rep.zero_set_kind = rep.zero_set.kind;
    rep.verdict = rep.zero_set_kind == ZeroSetKind::contains_interval
                      ? SpectrumVerdict::has_infinite_multiplicity_eigenvalue
                      : SpectrumVerdict::absolutely_continuous;
    return rep;
}

FlatBandDemo shell_stationarity_defect(const SymbolSpec& spec, const GridSpec& grid,
                                       double sigma_lo, double sigma_hi,
                                       std::vector<double> times) {
    spec.validate();
    grid.validate();
    if (!(0.0 <= sigma_lo && sigma_lo < sigma_hi))
        throw validation_error("shell needs 0 <= sigma_lo < sigma_hi");
    if (times.empty()) throw validation_error("demo needs at least one time");

    // normalized indicator of the frequency shell
    WavePacket u;
    u.grid = grid;
    u.space = Space::frequency;
    u.values.assign(grid.total_points(), 0.0);
    int idx[3];
    std::size_t count = 0;
    std::vector<double> shell_sigma;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        grid.unravel(k, idx);
        double s = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double xi = grid.xi(idx[a]);
            s += xi * xi;
        }
        if (s >= sigma_lo && s <= sigma_hi) {
            u.values[k] = 1.0;
            shell_sigma.push_back(s);
            ++count;
        }
    }
    if (count < 10)
        throw validation_error(
            "frequency shell is too thin on this grid (< 10 modes); refine the grid");
    const double nrm = norm(u);
    for (cplx& z : u.values) z /= nrm;

    const double mid = eval_psi(spec, 0.5 * (sigma_lo + sigma_hi));

    FlatBandDemo demo;
    demo.mode_count = count;
    demo.times = times;
    const double cell = std::pow(grid.xi_spacing(), grid.dim) / (nrm * nrm);
    for (double t : times) {
        const WavePacket ut = free_evolve(u, spec, t);
        double d2 = 0.0;
        for (std::size_t k = 0; k < u.values.size(); ++k)
            d2 += std::norm(ut.values[k] - std::exp(cplx(0.0, -t * mid)) * u.values[k]);
        demo.defect = std::max(demo.defect, std::sqrt(d2 * std::pow(grid.xi_spacing(), grid.dim)));
        // direct multiplier prediction: sum over shell of |e^{-it psi} - e^{-it psi_mid}|^2
        double p2 = 0.0;
        for (double s : shell_sigma) {
            const cplx diff =
                std::exp(cplx(0.0, -t * eval_psi(spec, s))) - std::exp(cplx(0.0, -t * mid));
            p2 += std::norm(diff);
        }
        demo.predicted = std::max(demo.predicted, std::sqrt(p2 * cell));
    }
    return demo;
}

FlatBandDemo flat_band_eigen_demo(const SymbolSpec& spec, const GridSpec& grid) {
    if (spec.kind != SymbolKind::flat_band)
        throw validation_error("eigen demo needs a flat_band symbol (psi' == 0 on a band)");
    return shell_stationarity_defect(spec, grid, spec.band_lo, spec.band_hi);
}

} // namespace nlscat
