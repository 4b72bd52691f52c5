#include "nlscat/runner.hpp"

#include "nlscat/csv.hpp"
#include "nlscat/diagnostics.hpp"
#include "nlscat/errors.hpp"
#include "nlscat/evolution.hpp"
#include "nlscat/fourier.hpp"
#include "nlscat/packet.hpp"
#include "nlscat/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace nlscat {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + out_dir);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << text;
    if (!os) throw std::runtime_error("short write on " + path);
}

WavePacket build_packet_checked(const ExperimentConfig& cfg) {
    const PacketConfig& pc = *cfg.packet;
    WavePacket phi = make_annulus_packet(cfg.grid, pc.eps, pc.R, pc.center, pc.smoothness);
    const double tail = boundary_tail_ratio(phi);
    if (tail > pc.tail_tol) {
        std::ostringstream os;
        os << "packet boundary tail " << tail << " exceeds tail_tol " << pc.tail_tol
           << "; widen the box or loosen the tolerance";
        throw validation_error(os.str());
    }
    return phi;
}

const char* bool_name(bool b) { return b ? "true" : "false"; }

const char* tail_name(TailVerdict v) {
    return v == TailVerdict::convergent ? "convergent" : "divergent";
}

void print_class_report(std::ostream& os, const ClassReport& cr) {
    os << "[class]\n";
    os << "in_tilde_B = " << bool_name(cr.in_tilde_B) << "\n";
    os << "in_B_up_to_order = " << cr.in_B_up_to_order << "\n";
    os << "psi_prime_sigma_monotone = " << trend_name(cr.psi_prime_sigma_monotone) << "\n";
    os << "envelope_constant = " << bool_name(cr.envelope_constant) << "\n";
    os << "samples_used = " << cr.samples_used << "\n";
    os << "sigma_lo = " << fmtg(cr.sigma_lo) << "\n";
    os << "sigma_hi = " << fmtg(cr.sigma_hi) << "\n";
}

// Scan range for the spectrum summary: the knot span for tabulated symbols,
// a fixed wide band otherwise.
std::pair<double, double> spectrum_scan_range(const SymbolSpec& s) {
    if (s.kind == SymbolKind::tabulated) {
        const double hi = s.knots_sigma.back();
        return {std::max(s.knots_sigma.front(), 1e-3 * hi), hi};
    }
    if (s.kind == SymbolKind::flat_band) return {1e-2, std::max(1e2, 2.0 * s.band_hi)};
    return {1e-2, 1e2};
}

void print_spectrum_report(std::ostream& os, const SymbolSpec& symbol) {
    os << "[spectrum]\n";
    try {
        const auto [lo, hi] = spectrum_scan_range(symbol);
        const SpectrumReport sp = build_spectrum_report(symbol, lo, hi);
        os << "lower = " << fmtg(sp.lower) << "\n";
        os << "upper = " << (sp.unbounded_above ? std::string("inf") : fmtg(sp.upper)) << "\n";
        os << "zero_set_kind = "
           << (sp.zero_set_kind == ZeroSetKind::empty             ? "empty"
               : sp.zero_set_kind == ZeroSetKind::discrete        ? "discrete"
                                                                  : "contains_interval")
           << "\n";
        os << "zero_set =";
        for (double p : sp.zero_set.points) os << " " << fmtg(p);
        for (const auto& iv : sp.zero_set.intervals)
            os << " [" << fmtg(iv.first) << ", " << fmtg(iv.second) << "]";
        os << "\n";
        os << "verdict = "
           << (sp.verdict == SpectrumVerdict::absolutely_continuous
                   ? "absolutely_continuous"
                   : "has_infinite_multiplicity_eigenvalue")
           << "\n";
    } catch (const validation_error& e) {
        os << "unavailable = " << e.what() << "\n";
    }
}

void print_bound_constants(std::ostream& os, const BoundConstants& bc) {
    os << "[constants]\n";
    os << "Gamma = " << fmt17(bc.Gamma) << "\n";
    os << "c1 = " << fmt17(bc.c1) << "\n";
    os << "c2 = " << fmt17(bc.c2) << "\n";
    os << "c3 = " << fmt17(bc.c3) << "\n";
    os << "c4 = " << fmt17(bc.c4) << "\n";
    os << "N = " << bc.N << "\n";
    os << "direction = " << cone_mode_name(bc.direction) << "\n";
}

// Slope b of value ~ a + b log t on window samples (linear in value, so a
// zero first sample is fine).  Used for the divergence witness at gamma = 1.
std::optional<double> log_model_slope(const TimeSeries& s, double wlo, double whi) {
    double su = 0, sv = 0, suu = 0, suv = 0;
    int n = 0;
    for (const auto& [t, v] : s.samples) {
        if (t < wlo || t > whi || !(t > 0.0)) continue;
        const double u = std::log(t);
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
        ++n;
    }
    if (n < 3) return std::nullopt;
    const double denom = n * suu - su * su;
    if (!(denom > 0.0)) return std::nullopt;
    return (n * suv - su * sv) / denom;
}

struct CookResult {
    TimeSeries series;
    FitAttempt fit;
    TailClassification cls;  // valid only when fit.fit
};

CookResult cook_once(const ExperimentConfig& cfg, const WavePacket& phi,
                     const PotentialSpec& pot, const std::vector<double>& ts) {
    CookResult r;
    r.series = cook_integrand_series(phi, cfg.symbol, pot, ts);
    const auto [wlo, whi] = cfg.effective_fit_window(ts);
    r.fit = fit_exponent(r.series, wlo, whi);
    if (r.fit.fit) {
        r.series.fit = r.fit.fit;
        r.cls = classify_tail(r.series, *r.fit.fit, cfg.tolerances.dead_band);
    }
    return r;
}

}  // namespace

void parallel_for_indexed(std::size_t count, int workers,
                          const std::function<void(std::size_t)>& fn) {
    if (workers < 1) throw validation_error("worker count must be >= 1");
    const std::size_t nthreads = std::min<std::size_t>(workers, count);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nthreads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

RunOutcome run(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose) {
    cfg.validate();
    if (cfg.diagnostics.empty())
        throw validation_error("run needs at least one diagnostic in the config");
    ensure_dir(out_dir);

    RunOutcome out;
    std::ostringstream rep, fits, verdicts;
    bool pass = true;
    auto verdict = [&](bool ok, const std::string& what) {
        verdicts << (ok ? "PASS " : "FAIL ") << what << "\n";
        pass = pass && ok;
    };

    rep << "symbol = " << cfg.symbol.describe() << "\n";
    rep << "grid = dim " << cfg.grid.dim << ", " << cfg.grid.points_per_dim
        << " points per axis, box half-length " << fmtg(cfg.grid.box_half_length) << "\n";
    if (cfg.potential) rep << "potential = " << cfg.potential->describe() << "\n";
    rep << "dt = " << fmtg(cfg.dt) << "\n";
    rep << "seed = " << cfg.seed << "\n";

    const WavePacket phi = build_packet_checked(cfg);
    rep << "packet boundary tail = " << fmtg(boundary_tail_ratio(phi)) << "\n";
    const double nphi = norm(phi);
    const double xnorm = position_norm(phi);
    rep << "norm = " << fmt17(nphi) << ", position norm = " << fmt17(xnorm) << "\n\n";

    print_class_report(rep, certify_classes(cfg.symbol, 1e-2, 1e2, 64, 4));
    rep << "\n";
    print_spectrum_report(rep, cfg.symbol);
    rep << "\n";

    std::vector<double> ts;
    if (cfg.times.present()) ts = cfg.times.materialize();

    // Bound constants live on the packet band; c4 is calibrated from the
    // measured Cook integrand when a long-range run asks for it.
    std::optional<BoundConstants> bc;
    if (cfg.potential && cfg.potential->family == PotentialFamily::long_range) {
        const int N = std::max(2, cfg.cone ? cfg.cone->N : 3);
        try {
            bc = build_bound_constants(cfg.symbol, *cfg.potential, cfg.packet->eps,
                                       cfg.packet->R, cfg.grid.dim, N);
        } catch (const validation_error& e) {
            rep << "[constants]\nunavailable = " << e.what() << "\n\n";
        }
        if (bc && !ts.empty()) {
            const Lemma2Report l2 =
                lemma2_upper_check(phi, cfg.symbol, *cfg.potential, ts, bc->N);
            bc->c4 = l2.c4;
            verdict(l2.ok, "integrand upper envelope c3 t^-gamma + c4 t^-N holds (worst margin " +
                               fmtg(l2.worst_margin) + ")");
        }
        if (bc) {
            print_bound_constants(rep, *bc);
            rep << "\n";
        }
    }

    auto write_series = [&](const TimeSeries& s, const std::string& stem) {
        const std::string path = out_dir + "/" + stem + ".csv";
        write_series_csv(path, s, cfg.params_hash());
        out.files_written.push_back(path);
        if (verbose)
            for (const auto& [t, v] : s.samples)
                rep << "  " << stem << " t=" << fmtg(t) << " value=" << fmt17(v) << "\n";
    };

    auto note_fit = [&](const TimeSeries& s, const FitAttempt& fa) {
        fits << quantity_name(s.quantity) << ": ";
        if (fa.fit)
            fits << "exponent=" << fmt17(fa.fit->exponent) << " prefactor="
                 << fmt17(fa.fit->prefactor) << " r2=" << fmt17(fa.fit->r2) << " window=["
                 << fmtg(fa.fit->window_lo) << ", " << fmtg(fa.fit->window_hi) << "]\n";
        else
            fits << "no power law (" << fa.note << ", best r2 " << fmtg(fa.r2) << ")\n";
    };

    for (Quantity q : cfg.diagnostics) {
        switch (q) {
            case Quantity::cook_integrand: {
                CookResult r = cook_once(cfg, phi, *cfg.potential, ts);
                write_series(r.series, quantity_name(q));
                note_fit(r.series, r.fit);
                if (!r.fit.fit) {
                    verdict(false, "cook_integrand has a clean power-law tail");
                    break;
                }
                std::string line = std::string("cook_integrand tail is ") +
                                   tail_name(r.cls.verdict) +
                                   (r.cls.by_ratio ? " (tail-integral rule)" : " (exponent rule)");
                if (cfg.expect)
                    verdict(*cfg.expect == tail_name(r.cls.verdict), line + ", as expected");
                else
                    verdict(true, line);
                break;
            }
            case Quantity::cone_mass_inside: {
                TimeSeries s;
                const ConeConfig& cc = *cfg.cone;
                if (cc.direction)
                    s = propagation_estimate_series(phi, cfg.symbol, *cc.direction,
                                                    cfg.packet->eps, cfg.packet->R, ts, cc.N);
                else
                    s = propagation_estimate_series(phi, cfg.symbol, *cc.speed, ts);
                const auto [wlo, whi] = cfg.effective_fit_window(ts);
                FitAttempt fa = fit_exponent(s, wlo, whi);
                s.fit = fa.fit;
                write_series(s, quantity_name(q));
                note_fit(s, fa);
                if (cc.direction) {
                    const bool ok = fa.fit && fa.fit->exponent <= -static_cast<double>(cc.N);
                    verdict(ok, "inside-cone amplitude decays at least like t^-" +
                                    std::to_string(cc.N));
                } else {
                    verdict(true, "inside-cone amplitude tracked at fixed speed " +
                                      fmtg(*cc.speed) + " (no decay requirement)");
                }
                break;
            }
            case Quantity::cauchy_gap: {
                EvolutionParams params{cfg.symbol, cfg.potential, cfg.dt,
                                       SplittingOrder::strang};
                TimeSeries s = cauchy_gap_series(phi, params, cfg.time_pairs);
                std::vector<double> t1s;
                for (const auto& [t, v] : s.samples) t1s.push_back(t);
                const auto [wlo, whi] = cfg.effective_fit_window(t1s);
                FitAttempt fa = fit_exponent(s, wlo, whi);
                s.fit = fa.fit;
                write_series(s, quantity_name(q));
                note_fit(s, fa);
                const bool shrinking = fa.fit && fa.fit->exponent <= -cfg.tolerances.dead_band;
                if (cfg.expect) {
                    const bool want_shrink = *cfg.expect == "convergent";
                    verdict(shrinking == want_shrink,
                            std::string("wave-operator increments are ") +
                                (shrinking ? "shrinking" : "not shrinking") + ", as expected");
                } else {
                    verdict(true, std::string("wave-operator increments are ") +
                                      (shrinking ? "shrinking" : "not shrinking"));
                }
                break;
            }
            case Quantity::pairing: {
                TimeSeries s = pairing_series(phi, cfg.symbol, *cfg.potential, ts);
                const auto [wlo, whi] = cfg.effective_fit_window(ts);
                FitAttempt fa = fit_exponent(s, wlo, whi);
                s.fit = fa.fit;
                write_series(s, quantity_name(q));
                note_fit(s, fa);
                if (!bc) {
                    verdict(false, "pairing lower bound (constants unavailable)");
                    break;
                }
                double worst = std::numeric_limits<double>::infinity();
                for (const auto& [t, v] : s.samples) {
                    const double lower = bc->c1 * std::pow(t, -cfg.potential->gamma) * nphi * nphi -
                                         bc->c2 * std::pow(t, -2.0 - cfg.potential->gamma) *
                                             xnorm * xnorm;
                    worst = std::min(worst, v - lower);
                }
                verdict(worst >= -1e-12 * (1.0 + nphi * nphi),
                        "pairing dominates c1 t^-gamma |phi|^2 - c2 t^-(2+gamma) |x phi|^2 "
                        "(worst margin " + fmtg(worst) + ")");
                const OutsideMassCheck om = outside_mass_check(phi, cfg.symbol, bc->Gamma, ts);
                verdict(om.ok, "mass outside radius Gamma t obeys the Chebyshev bound "
                               "(worst margin " + fmtg(om.worst_margin) + ")");
                break;
            }
            case Quantity::heisenberg_norm: {
                TimeSeries s = heisenberg_norm_series(phi, cfg.symbol, ts);
                const auto [wlo, whi] = cfg.effective_fit_window(ts);
                FitAttempt fa = fit_exponent(s, wlo, whi);
                s.fit = fa.fit;
                write_series(s, quantity_name(q));
                note_fit(s, fa);
                // Quadratic spreading bound with the fastest band speed.
                double vmax = 0.0;
                constexpr int K = 513;
                for (int i = 0; i < K; ++i) {
                    const double r =
                        cfg.packet->eps + (cfg.packet->R - cfg.packet->eps) * i / (K - 1);
                    vmax = std::max(vmax, group_speed_envelope(cfg.symbol, r));
                }
                double worst = std::numeric_limits<double>::infinity();
                for (const auto& [t, v] : s.samples) {
                    const double bound2 = 2.0 * xnorm * xnorm +
                                          8.0 * cfg.grid.dim * t * t * vmax * vmax * nphi * nphi;
                    worst = std::min(worst, bound2 - v * v);
                }
                verdict(worst >= -1e-9 * (1.0 + xnorm * xnorm),
                        "Heisenberg position norm obeys the quadratic spreading bound "
                        "(worst margin " + fmtg(worst) + ")");
                break;
            }
            case Quantity::divergence_integral: {
                EvolutionParams params{cfg.symbol, cfg.potential, cfg.dt,
                                       SplittingOrder::strang};
                TimeSeries s = divergence_witness(phi, params, ts, ts.back());
                auto [wlo, whi] = cfg.effective_fit_window(ts);
                // The first sample is identically zero by construction; keep
                // it out of any power-law window.
                for (const auto& [t, v] : s.samples)
                    if (v > 0.0) { wlo = std::max(wlo, std::min(t, whi)); break; }
                const double g = cfg.potential->gamma;
                if (std::abs(g - 1.0) < 1e-9) {
                    // Borderline decay grows like log t, not a power.
                    const auto slope = log_model_slope(s, wlo, whi);
                    write_series(s, quantity_name(q));
                    if (slope)
                        fits << "divergence_integral: log model slope=" << fmt17(*slope)
                             << " window=[" << fmtg(wlo) << ", " << fmtg(whi) << "]\n";
                    const bool ok = slope && bc && *slope >= bc->c1 * nphi * nphi;
                    verdict(ok, "witness grows at least like c1 |phi|^2 log t");
                } else {
                    FitAttempt fa = fit_exponent(s, wlo, whi);
                    s.fit = fa.fit;
                    write_series(s, quantity_name(q));
                    note_fit(s, fa);
                    const bool ok = fa.fit && fa.fit->exponent >=
                                                  (1.0 - g) - cfg.tolerances.exponent_tol;
                    verdict(ok, "witness grows like t^(1-gamma) within tolerance");
                }
                break;
            }
        }
    }

    rep << "[fits]\n" << fits.str() << "\n";
    rep << "[verdicts]\n" << verdicts.str();
    rep << "RESULT " << (pass ? "PASS" : "FAIL") << "\n";
    out.pass = pass;
    out.report = rep.str();
    write_text(out_dir + "/report.txt", out.report);
    out.files_written.push_back(out_dir + "/report.txt");
    return out;
}

RunOutcome run_cook(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose) {
    if (std::find(cfg.diagnostics.begin(), cfg.diagnostics.end(), Quantity::cook_integrand) ==
        cfg.diagnostics.end())
        throw validation_error("cook needs the cook_integrand diagnostic in the config");
    return run(cfg, out_dir, verbose);
}

RunOutcome run_threshold_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                               int workers, bool verbose) {
    cfg.validate();
    if (!cfg.sweep) throw validation_error("threshold-sweep needs a sweep section");
    ensure_dir(out_dir);
    RunOutcome out;

    const WavePacket phi = build_packet_checked(cfg);
    const std::vector<double> ts = cfg.times.materialize();
    const double amp = cfg.sweep->amplitude;
    const std::size_t n = cfg.sweep->gammas.size();

    struct SweepPoint {
        CookResult cook;
        std::optional<Fit> gap_fit;
        double gap_r2 = 0.0;
        std::vector<std::string> files;
    };
    std::vector<SweepPoint> points(n);

    parallel_for_indexed(n, workers, [&](std::size_t i) {
        const double gamma = cfg.sweep->gammas[i];
        const PotentialSpec pot = (gamma > 1.0) ? PotentialSpec::short_range(amp, gamma)
                                                : PotentialSpec::long_range(amp, gamma);
        SweepPoint& p = points[i];
        p.cook = cook_once(cfg, phi, pot, ts);
        const std::uint64_t h =
            fnv1a_hash(cfg.canonical_string() + "|sweep_point=" + fmt17(gamma));
        const std::string ccsv = out_dir + "/cook_integrand_gamma_" + fmtg(gamma) + ".csv";
        write_series_csv(ccsv, p.cook.series, h);
        p.files.push_back(ccsv);

        if (!cfg.time_pairs.empty()) {
            EvolutionParams params{cfg.symbol, pot, cfg.dt, SplittingOrder::strang};
            TimeSeries gap = cauchy_gap_series(phi, params, cfg.time_pairs);
            std::vector<double> t1s;
            for (const auto& [t, v] : gap.samples) t1s.push_back(t);
            const auto [wlo, whi] = cfg.effective_fit_window(t1s);
            FitAttempt fa = fit_exponent(gap, wlo, whi);
            gap.fit = fa.fit;
            p.gap_fit = fa.fit;
            p.gap_r2 = fa.r2;
            const std::string gcsv = out_dir + "/cauchy_gap_gamma_" + fmtg(gamma) + ".csv";
            write_series_csv(gcsv, gap, h);
            p.files.push_back(gcsv);
        }
    });

    // Deterministic single-threaded assembly in input order.
    std::ostringstream rep, table;
    rep << "threshold sweep, amplitude " << fmtg(amp) << ", symbol " << cfg.symbol.describe()
        << "\n";
    table << "gamma,exponent,r2,verdict,by_ratio,tail_ratio,gap_slope\n";
    bool pass = true;
    std::ostringstream verdicts;
    auto verdict = [&](bool ok, const std::string& what) {
        verdicts << (ok ? "PASS " : "FAIL ") << what << "\n";
        pass = pass && ok;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const double gamma = cfg.sweep->gammas[i];
        const SweepPoint& p = points[i];
        for (const auto& f : p.files) out.files_written.push_back(f);

        table << fmtg(gamma) << ",";
        if (!p.cook.fit.fit) {
            table << ",,unfit,,,";
            verdict(false, "gamma " + fmtg(gamma) + " produced a clean power law");
        } else {
            const bool convergent = p.cook.cls.verdict == TailVerdict::convergent;
            table << fmt17(p.cook.fit.fit->exponent) << "," << fmt17(p.cook.fit.fit->r2) << ","
                  << tail_name(p.cook.cls.verdict) << "," << (p.cook.cls.by_ratio ? 1 : 0) << ","
                  << fmt17(p.cook.cls.tail_ratio) << ",";
            const bool want = gamma > 1.0;
            verdict(convergent == want,
                    "gamma " + fmtg(gamma) + " classified " + tail_name(p.cook.cls.verdict) +
                        " (integrable tail iff gamma > 1)");
            rep << "gamma " << fmtg(gamma) << ": exponent " << fmtg(p.cook.fit.fit->exponent)
                << " -> " << tail_name(p.cook.cls.verdict) << "\n";
            if (verbose)
                rep << "    r2 " << fmtg(p.cook.fit.fit->r2) << " tail ratio "
                    << fmtg(p.cook.cls.tail_ratio) << "\n";
        }
        if (!cfg.time_pairs.empty()) {
            const bool shrinking =
                p.gap_fit && p.gap_fit->exponent <= -cfg.tolerances.dead_band;
            if (p.gap_fit) table << fmt17(p.gap_fit->exponent);
            verdict(shrinking == (gamma > 1.0),
                    "gamma " + fmtg(gamma) + " Cauchy gaps " +
                        (shrinking ? "shrink" : "do not shrink") + " (shrink iff gamma > 1)");
        }
        table << "\n";
    }
    write_text(out_dir + "/sweep_summary.csv", table.str());
    out.files_written.push_back(out_dir + "/sweep_summary.csv");

    rep << "\n[verdicts]\n" << verdicts.str();
    rep << "RESULT " << (pass ? "PASS" : "FAIL") << "\n";
    out.pass = pass;
    out.report = rep.str();
    write_text(out_dir + "/report.txt", out.report);
    out.files_written.push_back(out_dir + "/report.txt");
    return out;
}

RunOutcome run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir, bool verbose) {
    cfg.validate();
    ensure_dir(out_dir);
    RunOutcome out;
    std::ostringstream rep;
    bool pass = true;

    rep << "symbol = " << cfg.symbol.describe() << "\n\n";
    print_class_report(rep, certify_classes(cfg.symbol, 1e-2, 1e2, 64, 4));
    rep << "\n";
    print_spectrum_report(rep, cfg.symbol);
    rep << "\n";

    if (cfg.symbol.kind == SymbolKind::flat_band) {
        const FlatBandDemo demo = flat_band_eigen_demo(cfg.symbol, cfg.grid);
        rep << "[flat_band]\n";
        rep << "mode_count = " << demo.mode_count << "\n";
        rep << "defect = " << fmtg(demo.defect) << "\n";
        rep << "predicted = " << fmtg(demo.predicted) << "\n";
        rep << "times =";
        for (double t : demo.times) rep << " " << fmtg(t);
        rep << "\n\n";
        if (verbose) rep << "shell indicator states are exact eigenvectors on the band\n";
        if (!(demo.defect <= 1e-10)) {
            rep << "FAIL flat-band shell states are stationary (defect " << fmtg(demo.defect)
                << ")\n";
            pass = false;
        } else {
            rep << "PASS flat-band shell states are stationary to 1e-10\n";
        }
    }

    if (cfg.packet) {
        const ConeThreshold th =
            cone_threshold(cfg.symbol, cfg.packet->eps, cfg.packet->R, ConeMode::inf);
        if (th.degenerate)
            rep << "warning: degenerate cone threshold (zero group speed) on the packet band ["
                << fmtg(cfg.packet->eps) << ", " << fmtg(cfg.packet->R) << "]\n";
        else
            rep << "slowest band speed = " << fmtg(th.speed) << "\n";
    }

    rep << "RESULT " << (pass ? "PASS" : "FAIL") << "\n";
    out.pass = pass;
    out.report = rep.str();
    write_text(out_dir + "/report.txt", out.report);
    out.files_written.push_back(out_dir + "/report.txt");
    return out;
}

RunOutcome run_check_symbol(const SymbolSpec& symbol, double sigma_lo, double sigma_hi,
                            int n_samples, int k_max) {
    RunOutcome out;
    std::ostringstream rep;
    rep << "symbol = " << symbol.describe() << "\n";
    print_class_report(rep, certify_classes(symbol, sigma_lo, sigma_hi, n_samples, k_max));
    print_spectrum_report(rep, symbol);
    out.report = rep.str();
    return out;
}

RunOutcome run_replay(const std::vector<std::string>& csv_paths, double window_lo,
                      double window_hi) {
    if (csv_paths.empty()) throw validation_error("replay needs at least one series file");
    RunOutcome out;
    std::ostringstream rep;
    for (const auto& path : csv_paths) {
        SeriesFile sf;
        try {
            sf = read_series_csv(path);
        } catch (const std::runtime_error&) {
            rep << path << ": skipped (not a series file)\n";
            continue;
        } catch (const validation_error&) {
            rep << path << ": skipped (not a series file)\n";
            continue;
        }
        double lo = window_lo, hi = window_hi;
        if (!(lo > 0.0 && lo < hi)) {
            if (sf.series.fit) {
                lo = sf.series.fit->window_lo;
                hi = sf.series.fit->window_hi;
            } else {
                const double first = sf.series.samples.front().first;
                const double last = sf.series.samples.back().first;
                lo = std::max(10.0, first);
                hi = first + 0.9 * (last - first);
                if (!(lo < hi)) {
                    lo = first;
                    hi = last;
                }
            }
        }
        FitAttempt fa;
        try {
            fa = fit_exponent(sf.series, lo, hi);
        } catch (const validation_error& e) {
            rep << path << ": unfittable (" << e.what() << ")\n";
            continue;
        }
        rep << path << ": quantity " << quantity_name(sf.series.quantity) << ", "
            << sf.series.samples.size() << " samples";
        if (!fa.fit) {
            rep << ", no clean power law (" << fa.note << ")\n";
            if (sf.series.fit) {
                rep << path << ": MISMATCH (stored fit not reproduced)\n";
                out.pass = false;
            }
            continue;
        }
        rep << ", refit exponent " << fmt17(fa.fit->exponent) << " r2 " << fmt17(fa.fit->r2);
        if (sf.series.fit) {
            const bool same = fa.fit->exponent == sf.series.fit->exponent &&
                              fa.fit->prefactor == sf.series.fit->prefactor &&
                              fa.fit->r2 == sf.series.fit->r2;
            rep << ", stored " << fmt17(sf.series.fit->exponent);
            if (!same) {
                rep << " MISMATCH";
                out.pass = false;
            } else {
                rep << " (bit-identical)";
            }
        }
        rep << "\n";
    }
    out.report = rep.str();
    return out;
}

} // namespace nlscat
