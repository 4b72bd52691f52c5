#include "nlscat/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nlscat/errors.hpp"

namespace nlscat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Harmonic-mean (Fritsch-Butland) tangents: C^1, monotone on monotone data,
// zero slope at equal-value knot pairs and local extrema.
std::vector<double> monotone_tangents(const std::vector<double>& s,
                                      const std::vector<double>& v) {
    const std::size_t n = s.size();
    std::vector<double> d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i]) / (s[i + 1] - s[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * (s[i + 1] - s[i]) + (s[i] - s[i - 1]);
            const double w2 = (s[i + 1] - s[i]) + 2.0 * (s[i] - s[i - 1]);
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    return m;
}

struct HermitePiece {
    double t = 0.0, h = 0.0;
    std::size_t i = 0;
};

HermitePiece locate(const std::vector<double>& s, double sigma) {
    auto it = std::upper_bound(s.begin(), s.end(), sigma);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
        0, std::min<std::ptrdiff_t>(it - s.begin() - 1, static_cast<std::ptrdiff_t>(s.size()) - 2)));
    const double h = s[i + 1] - s[i];
    return {(sigma - s[i]) / h, h, i};
}

double tab_eval(const SymbolSpec& spec, double sigma) {
    const auto& s = spec.knots_sigma;
    const auto& v = spec.knots_value;
    if (sigma <= s.front()) return v.front();
    if (sigma >= s.back()) return v.back();
    const auto m = monotone_tangents(s, v);
    const auto p = locate(s, sigma);
    const double t = p.t, t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v[p.i] + (t3 - 2 * t2 + t) * p.h * m[p.i] +
           (-2 * t3 + 3 * t2) * v[p.i + 1] + (t3 - t2) * p.h * m[p.i + 1];
}

double tab_prime(const SymbolSpec& spec, double sigma) {
    const auto& s = spec.knots_sigma;
    const auto& v = spec.knots_value;
    if (sigma < s.front() || sigma > s.back()) return 0.0;  // clamped extension
    const auto m = monotone_tangents(s, v);
    const auto p = locate(s, sigma);
    const double t = p.t;
    return (6 * t * t - 6 * t) * (v[p.i] - v[p.i + 1]) / p.h +
           (3 * t * t - 4 * t + 1) * m[p.i] + (3 * t * t - 2 * t) * m[p.i + 1];
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

struct SampledTrend {
    Trend trend = Trend::neither;
    bool constant = false;
};

SampledTrend classify_samples(const std::vector<double>& y, double tol) {
    bool up = true, down = true;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double d = y[i + 1] - y[i];
        if (d < -tol) up = false;
        if (d > tol) down = false;
    }
    SampledTrend out;
    out.constant = up && down;
    // A constant envelope is weakly monotone in both directions; report it as
    // increasing and let callers consult the constant flag.
    if (up) out.trend = Trend::increasing;
    else if (down) out.trend = Trend::decreasing;
    else out.trend = Trend::neither;
    return out;
}

}  // namespace

const char* trend_name(Trend t) {
    switch (t) {
        case Trend::increasing: return "increasing";
        case Trend::decreasing: return "decreasing";
        case Trend::neither: return "neither";
    }
    return "?";
}

SymbolSpec SymbolSpec::fractional(double rho) {
    SymbolSpec s;
    s.kind = SymbolKind::fractional;
    s.rho = rho;
    s.validate();
    return s;
}

SymbolSpec SymbolSpec::relativistic(double mass) {
    SymbolSpec s;
    s.kind = SymbolKind::relativistic;
    s.mass = mass;
    s.validate();
    return s;
}

SymbolSpec SymbolSpec::logarithmic() {
    SymbolSpec s;
    s.kind = SymbolKind::logarithmic;
    return s;
}

SymbolSpec SymbolSpec::flat_band(double lo, double hi, double level) {
    SymbolSpec s;
    s.kind = SymbolKind::flat_band;
    s.band_lo = lo;
    s.band_hi = hi;
    s.band_level = level;
    s.validate();
    return s;
}

SymbolSpec SymbolSpec::tabulated(std::vector<double> sigma, std::vector<double> value) {
    SymbolSpec s;
    s.kind = SymbolKind::tabulated;
    s.knots_sigma = std::move(sigma);
    s.knots_value = std::move(value);
    s.validate();
    return s;
}

void SymbolSpec::validate() const {
    switch (kind) {
        case SymbolKind::fractional:
            if (!(rho > 0.0 && rho <= 2.0))
                throw validation_error("fractional symbol requires rho in (0, 2]");
            break;
        case SymbolKind::relativistic:
            if (!(mass > 0.0))
                throw validation_error("relativistic symbol requires mass > 0");
            break;
        case SymbolKind::logarithmic:
            break;
        case SymbolKind::flat_band:
            if (!(0.0 < band_lo && band_lo < band_hi))
                throw validation_error("flat_band requires 0 < band_lo < band_hi");
            if (!(band_level > 0.0))
                throw validation_error("flat_band requires level > 0");
            break;
        case SymbolKind::tabulated: {
            if (knots_sigma.size() < 2 || knots_sigma.size() != knots_value.size())
                throw validation_error("tabulated symbol needs >= 2 matched knots");
            if (knots_sigma.front() < 0.0)
                throw validation_error("tabulated knots must have sigma >= 0");
            for (std::size_t i = 0; i + 1 < knots_sigma.size(); ++i) {
                if (!(knots_sigma[i] < knots_sigma[i + 1]))
                    throw validation_error("tabulated sigma knots must strictly increase");
                if (knots_value[i + 1] < knots_value[i])
                    throw validation_error("tabulated values must be non-decreasing");
            }
            break;
        }
    }
}

std::string SymbolSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case SymbolKind::fractional: os << "fractional(rho=" << rho << ")"; break;
        case SymbolKind::relativistic: os << "relativistic(mass=" << mass << ")"; break;
        case SymbolKind::logarithmic: os << "logarithmic"; break;
        case SymbolKind::flat_band:
            os << "flat_band(" << band_lo << "," << band_hi << ",level=" << band_level << ")";
            break;
        case SymbolKind::tabulated:
            os << "tabulated[" << knots_sigma.size() << " knots";
            for (std::size_t i = 0; i < knots_sigma.size(); ++i)
                os << ";" << knots_sigma[i] << ":" << knots_value[i];
            os << "]";
            break;
    }
    return os.str();
}

double eval_psi(const SymbolSpec& spec, double sigma) {
    if (sigma < 0.0) throw std::domain_error("psi is defined for sigma >= 0");
    switch (spec.kind) {
        case SymbolKind::fractional:
            return std::pow(sigma, spec.rho);
        case SymbolKind::relativistic:
            // sqrt(sigma + m^2) - m, written to stay accurate for sigma << m^2
            return sigma / (std::sqrt(sigma + spec.mass * spec.mass) + spec.mass);
        case SymbolKind::logarithmic:
            return std::log1p(sigma);
        case SymbolKind::flat_band: {
            if (sigma >= spec.band_hi) {
                const double d = sigma - spec.band_hi;
                return spec.band_level + d * d;
            }
            if (sigma >= spec.band_lo) return spec.band_level;
            const double u = sigma / spec.band_lo;
            return spec.band_level * u * (2.0 - u);
        }
        case SymbolKind::tabulated:
            return tab_eval(spec, sigma);
    }
    throw std::logic_error("unreachable symbol kind");
}

double eval_psi_prime(const SymbolSpec& spec, double sigma) {
    if (sigma < 0.0) throw std::domain_error("psi is defined for sigma >= 0");
    switch (spec.kind) {
        case SymbolKind::fractional: {
            if (spec.rho == 1.0) return 1.0;
            if (sigma == 0.0) return spec.rho < 1.0 ? kInf : 0.0;
            return spec.rho * std::pow(sigma, spec.rho - 1.0);
        }
        case SymbolKind::relativistic:
            return 0.5 / std::sqrt(sigma + spec.mass * spec.mass);
        case SymbolKind::logarithmic:
            return 1.0 / (1.0 + sigma);
        case SymbolKind::flat_band: {
            if (sigma >= spec.band_hi) return 2.0 * (sigma - spec.band_hi);
            if (sigma >= spec.band_lo) return 0.0;
            const double u = sigma / spec.band_lo;
            return 2.0 * spec.band_level * (1.0 - u) / spec.band_lo;
        }
        case SymbolKind::tabulated:
            return tab_prime(spec, sigma);
    }
    throw std::logic_error("unreachable symbol kind");
}

double group_speed_envelope(const SymbolSpec& spec, double sigma) {
    if (sigma < 0.0) throw validation_error("frequency radius must be >= 0");
    if (spec.kind == SymbolKind::fractional) {
        // rho * r^{2 rho - 1}: avoids inf * 0 at r = 0 for rho < 1/2
        const double e = 2.0 * spec.rho - 1.0;
        if (sigma == 0.0) return e < 0.0 ? kInf : (e == 0.0 ? spec.rho : 0.0);
        return spec.rho * std::pow(sigma, e);
    }
    if (sigma == 0.0) return 0.0;
    return eval_psi_prime(spec, sigma * sigma) * sigma;
}

ConeThreshold cone_threshold(const SymbolSpec& spec, double eps, double R, ConeMode mode) {
    if (!(0.0 < eps && eps < R))
        throw validation_error("cone threshold needs a band 0 < eps < R");
    constexpr int K = 513;
    std::vector<double> env(K);
    double vmax = 0.0;
    for (int i = 0; i < K; ++i) {
        const double r = eps + (R - eps) * i / (K - 1);
        env[i] = group_speed_envelope(spec, r);
        vmax = std::max(vmax, env[i]);
    }
    const double tol = 1e-12 * (1.0 + vmax);
    const SampledTrend st = classify_samples(env, tol);

    ConeThreshold out;
    out.envelope = st.trend;
    out.envelope_constant = st.constant;
    switch (mode) {
        case ConeMode::increasing:
            if (st.trend != Trend::increasing)
                throw validation_error(
                    std::string("low-edge cone threshold psi'(eps^2)*eps needs a non-decreasing "
                                "group speed envelope on [eps, R]; sampled envelope is ") +
                    trend_name(st.trend));
            out.speed = group_speed_envelope(spec, eps);
            break;
        case ConeMode::decreasing:
            if (!(st.trend == Trend::decreasing || st.constant))
                throw validation_error(
                    std::string("high-edge cone threshold psi'(R^2)*R needs a non-increasing "
                                "group speed envelope on [eps, R]; sampled envelope is ") +
                    trend_name(st.trend));
            out.speed = group_speed_envelope(spec, R);
            break;
        case ConeMode::inf: {
            int k = static_cast<int>(std::min_element(env.begin(), env.end()) - env.begin());
            double best = env[k];
            if (k > 0 && k < K - 1) {
                // golden-section refinement of an interior minimum
                double a = eps + (R - eps) * (k - 1) / (K - 1);
                double b = eps + (R - eps) * (k + 1) / (K - 1);
                const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                double f1 = group_speed_envelope(spec, x1), f2 = group_speed_envelope(spec, x2);
                for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + b); ++it) {
                    if (f1 < f2) {
                        b = x2; x2 = x1; f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = group_speed_envelope(spec, x1);
                    } else {
                        a = x1; x1 = x2; f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = group_speed_envelope(spec, x2);
                    }
                }
                best = std::min(best, std::min(f1, f2));
            }
            out.speed = best;
            break;
        }
    }
    out.degenerate = out.speed <= tol;
    return out;
}

ClassReport certify_classes(const SymbolSpec& spec, double sigma_lo, double sigma_hi,
                            int n_samples, int k_max) {
    if (k_max < 1) throw validation_error("certification order must be >= 1");
    if (n_samples < 16) throw validation_error("certification needs >= 16 samples");
    if (!(0.0 < sigma_lo && sigma_lo < sigma_hi))
        throw validation_error("certification needs 0 < sigma_lo < sigma_hi");

    ClassReport rep;
    rep.samples_used = n_samples;
    rep.sigma_lo = sigma_lo;
    rep.sigma_hi = sigma_hi;
    rep.worst_margin = kInf;

    std::vector<double> sigmas(n_samples);
    for (int i = 0; i < n_samples; ++i)
        sigmas[i] = sigma_lo * std::pow(sigma_hi / sigma_lo, double(i) / (n_samples - 1));

    // nonnegative and non-decreasing at the sample points
    rep.in_tilde_B = true;
    for (double s : sigmas) {
        if (eval_psi(spec, s) < -1e-10 || eval_psi_prime(spec, s) < -1e-10) {
            rep.in_tilde_B = false;
            break;
        }
    }

    // sign alternation of k-th forward differences, absolute tolerance 1e-8
    bool failed = false;
    for (int k = 1; k <= k_max && !failed; ++k) {
        const double want = (k % 2 == 1) ? 1.0 : -1.0;  // sign of D^k psi
        bool pass = true;
        for (double s : sigmas) {
            const double h = 0.05 * s;
            double diff = 0.0;
            for (int j = 0; j <= k; ++j)
                diff += ((k - j) % 2 == 0 ? 1.0 : -1.0) * binomial(k, j) * eval_psi(spec, s + j * h);
            const double margin = want * diff;
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -1e-8) pass = false;
        }
        if (pass)
            rep.in_B_up_to_order = k;
        else
            failed = true;
    }
    if (!rep.in_tilde_B) rep.in_B_up_to_order = 0;

    // group speed envelope trend on the same interval
    std::vector<double> env(n_samples);
    double vmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        env[i] = group_speed_envelope(spec, sigmas[i]);
        vmax = std::max(vmax, env[i]);
    }
    const SampledTrend st = classify_samples(env, 1e-12 * (1.0 + vmax));
    rep.psi_prime_sigma_monotone = st.trend;
    rep.envelope_constant = st.constant;
    return rep;
}

const char* cone_mode_name(ConeMode m) {
    switch (m) {
        case ConeMode::increasing: return "increasing";
        case ConeMode::decreasing: return "decreasing";
        case ConeMode::inf: return "inf";
    }
    throw validation_error("unknown cone mode");
}

ConeMode parse_cone_mode(const std::string& name) {
    if (name == "increasing") return ConeMode::increasing;
    if (name == "decreasing") return ConeMode::decreasing;
    if (name == "inf") return ConeMode::inf;
    throw validation_error("unknown cone mode: " + name + " (want increasing|decreasing|inf)");
}

} // namespace nlscat
