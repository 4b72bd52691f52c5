#include "nlscat/potential.hpp"

#include "nlscat/errors.hpp"

#include <cmath>
#include <sstream>

namespace nlscat {

PotentialSpec PotentialSpec::short_range(double C, double gamma_s, PotentialProfile profile) {
    PotentialSpec p;
    p.family = PotentialFamily::short_range;
    p.profile = profile;
    p.C = C;
    p.gamma = gamma_s;
    p.validate();
    return p;
}

PotentialSpec PotentialSpec::long_range(double kappa, double gamma_l) {
    PotentialSpec p;
    p.family = PotentialFamily::long_range;
    p.kappa = kappa;
    p.gamma = gamma_l;
    p.validate();
    return p;
}

double PotentialSpec::amplitude() const {
    return family == PotentialFamily::short_range ? std::abs(C) : std::abs(kappa);
}

void PotentialSpec::validate() const {
    if (!std::isfinite(C) || !std::isfinite(kappa) || !std::isfinite(gamma))
        throw validation_error("potential parameters must be finite");
    if (family == PotentialFamily::short_range) {
        if (!(gamma > 1.0))
            throw validation_error(
                "short_range potential requires gamma_s > 1 (integrable tail); got gamma_s = " +
                std::to_string(gamma));
        if (!(C > 0.0))
            throw validation_error("short_range potential requires C > 0");
    } else {
        if (profile != PotentialProfile::exact_power)
            throw validation_error("long_range potential has no profile choice (exact power only)");
        if (!(gamma > 0.0 && gamma <= 1.0))
            throw validation_error(
                "long_range potential requires gamma_l in (0, 1]; got gamma_l = " +
                std::to_string(gamma));
        if (kappa == 0.0)
            throw validation_error("long_range potential requires kappa != 0");
    }
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (family == PotentialFamily::short_range) {
        os << "short_range(C=" << C << ",gamma_s=" << gamma;
        if (profile == PotentialProfile::compact_bump) os << ",compact_bump";
        os << ")";
    } else {
        os << "long_range(kappa=" << kappa << ",gamma_l=" << gamma << ")";
    }
    return os.str();
}

double eval_potential(const PotentialSpec& spec, const std::vector<double>& x) {
    double x2 = 0.0;
    for (double c : x) x2 += c * c;
    if (spec.family == PotentialFamily::short_range &&
        spec.profile == PotentialProfile::compact_bump) {
        if (x2 >= 1.0) return 0.0;
        return spec.C * std::exp(spec.gamma * (1.0 - 1.0 / (1.0 - x2)));
    }
    const double amp = spec.family == PotentialFamily::short_range ? spec.C : spec.kappa;
    return amp * std::pow(1.0 + x2, -0.5 * spec.gamma);
}

std::vector<double> sample_potential(const PotentialSpec& spec, const GridSpec& grid) {
    grid.validate();
    spec.validate();
    std::vector<double> v(grid.total_points());
    int idx[3];
    std::vector<double> x(grid.dim);
    for (std::size_t k = 0; k < v.size(); ++k) {
        grid.unravel(k, idx);
        for (int a = 0; a < grid.dim; ++a) x[a] = grid.coord(idx[a]);
        v[k] = eval_potential(spec, x);
    }
    return v;
}

DecayCheck decay_bound_check(const PotentialSpec& spec, const GridSpec& grid,
                             const std::vector<double>& samples) {
    if (samples.size() != grid.total_points())
        throw validation_error("sample count does not match the grid");
    DecayCheck out;
    int idx[3];
    for (std::size_t k = 0; k < samples.size(); ++k) {
        grid.unravel(k, idx);
        double x2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            const double x = grid.coord(idx[a]);
            x2 += x * x;
        }
        const double envelope = std::pow(1.0 + x2, -0.5 * spec.gamma);
        const double ratio = std::abs(samples[k]) / (spec.amplitude() * envelope);
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.worst_index = k;
        }
    }
    out.ok = out.worst_ratio <= 1.0 + 1e-12;
    grid.unravel(out.worst_index, idx);
    out.worst_point.resize(grid.dim);
    for (int a = 0; a < grid.dim; ++a) out.worst_point[a] = grid.coord(idx[a]);
    return out;
}

DecayCheck decay_bound_check(const PotentialSpec& spec, const GridSpec& grid) {
    return decay_bound_check(spec, grid, sample_potential(spec, grid));
}

} // namespace nlscat
