#include "nlscat/config.hpp"

#include "nlscat/csv.hpp"
#include "nlscat/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nlscat {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw validation_error("unknown config key: " + where + "." + it.key());
    }
}

const json& need(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw validation_error("missing config key: " + where + "." + key);
    return *it;
}

double need_num(const json& obj, const char* key, const std::string& where) {
    const json& v = need(obj, key, where);
    if (!v.is_number()) throw validation_error("config key must be a number: " + where + "." + key);
    return v.get<double>();
}

SymbolSpec parse_symbol(const json& j) {
    if (!j.is_object()) throw validation_error("config key 'symbol' must be an object");
    const std::string kind = need(j, "kind", "symbol").get<std::string>();
    SymbolSpec s;
    if (kind == "fractional") {
        reject_unknown_keys(j, {"kind", "rho"}, "symbol");
        s = SymbolSpec::fractional(need_num(j, "rho", "symbol"));
    } else if (kind == "relativistic") {
        reject_unknown_keys(j, {"kind", "mass"}, "symbol");
        s = SymbolSpec::relativistic(need_num(j, "mass", "symbol"));
    } else if (kind == "logarithmic") {
        reject_unknown_keys(j, {"kind"}, "symbol");
        s = SymbolSpec::logarithmic();
    } else if (kind == "flat_band") {
        reject_unknown_keys(j, {"kind", "band_lo", "band_hi", "level"}, "symbol");
        s = SymbolSpec::flat_band(need_num(j, "band_lo", "symbol"),
                                  need_num(j, "band_hi", "symbol"),
                                  need_num(j, "level", "symbol"));
    } else if (kind == "tabulated") {
        reject_unknown_keys(j, {"kind", "knots_sigma", "knots_value"}, "symbol");
        s = SymbolSpec::tabulated(
            need(j, "knots_sigma", "symbol").get<std::vector<double>>(),
            need(j, "knots_value", "symbol").get<std::vector<double>>());
    } else {
        throw validation_error("unknown symbol kind: " + kind);
    }
    return s;
}

PotentialSpec parse_potential(const json& j) {
    if (!j.is_object()) throw validation_error("config key 'potential' must be an object");
    const std::string family = need(j, "family", "potential").get<std::string>();
    if (family == "long_range") {
        reject_unknown_keys(j, {"family", "kappa", "gamma"}, "potential");
        return PotentialSpec::long_range(need_num(j, "kappa", "potential"),
                                         need_num(j, "gamma", "potential"));
    }
    if (family == "short_range") {
        reject_unknown_keys(j, {"family", "C", "gamma", "profile"}, "potential");
        PotentialProfile profile = PotentialProfile::exact_power;
        if (j.contains("profile")) {
            const std::string p = j["profile"].get<std::string>();
            if (p == "exact_power")
                profile = PotentialProfile::exact_power;
            else if (p == "compact_bump")
                profile = PotentialProfile::compact_bump;
            else
                throw validation_error("unknown potential profile: " + p);
        }
        return PotentialSpec::short_range(need_num(j, "C", "potential"),
                                          need_num(j, "gamma", "potential"), profile);
    }
    throw validation_error("unknown potential family: " + family);
}

bool divisible(double span, double dt) {
    const double steps = span / dt;
    return std::abs(steps - std::llround(steps)) <= 1e-9 * std::max(1.0, std::abs(steps));
}

}  // namespace

std::vector<double> TimesConfig::materialize() const {
    if (!list.empty()) return list;
    if (count < 2 || !(hi > lo))
        throw validation_error("times range needs hi > lo and count >= 2");
    if (geometric && !(lo > 0.0))
        throw validation_error("geometric times need lo > 0");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        out[i] = geometric ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    return out;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw validation_error("config root must be a JSON object");
    reject_unknown_keys(j,
                        {"schema_version", "grid", "symbol", "potential", "packet", "dt", "times",
                         "time_pairs", "diagnostics", "fit_window", "expect", "sweep", "cone",
                         "output_dir", "seed", "tolerances"},
                        "<root>");

    ExperimentConfig cfg;
    const json& sv = need(j, "schema_version", "<root>");
    if (!sv.is_number_integer() || sv.get<int>() != 1)
        throw validation_error("unsupported config schema_version (expected 1)");
    cfg.schema_version = 1;

    {
        const json& g = need(j, "grid", "<root>");
        reject_unknown_keys(g, {"dim", "points_per_dim", "box_half_length"}, "grid");
        cfg.grid.dim = static_cast<int>(need_num(g, "dim", "grid"));
        cfg.grid.points_per_dim = static_cast<int>(need_num(g, "points_per_dim", "grid"));
        cfg.grid.box_half_length = need_num(g, "box_half_length", "grid");
    }

    cfg.symbol = parse_symbol(need(j, "symbol", "<root>"));

    if (j.contains("potential")) cfg.potential = parse_potential(j["potential"]);

    if (j.contains("packet")) {
        const json& p = j["packet"];
        reject_unknown_keys(p, {"eps", "R", "center", "smoothness", "tail_tol"}, "packet");
        PacketConfig pc;
        pc.eps = need_num(p, "eps", "packet");
        pc.R = need_num(p, "R", "packet");
        pc.center = need(p, "center", "packet").get<std::vector<double>>();
        pc.smoothness = need_num(p, "smoothness", "packet");
        if (p.contains("tail_tol")) pc.tail_tol = p["tail_tol"].get<double>();
        cfg.packet = pc;
    }

    if (j.contains("dt")) {
        if (!j["dt"].is_number()) throw validation_error("config key must be a number: <root>.dt");
        cfg.dt = j["dt"].get<double>();
    }

    if (j.contains("times")) {
        const json& t = j["times"];
        reject_unknown_keys(t, {"list", "lo", "hi", "count", "spacing"}, "times");
        if (t.contains("list")) {
            if (t.size() != 1)
                throw validation_error("times.list excludes the range fields");
            cfg.times.list = t["list"].get<std::vector<double>>();
        } else {
            cfg.times.lo = need_num(t, "lo", "times");
            cfg.times.hi = need_num(t, "hi", "times");
            cfg.times.count = static_cast<int>(need_num(t, "count", "times"));
            const std::string sp =
                t.contains("spacing") ? t["spacing"].get<std::string>() : "linear";
            if (sp != "linear" && sp != "geometric")
                throw validation_error("times.spacing must be 'linear' or 'geometric'");
            cfg.times.geometric = sp == "geometric";
        }
    }

    if (j.contains("time_pairs")) {
        const json& tp = j["time_pairs"];
        if (!tp.is_array()) throw validation_error("time_pairs must be an array of [t1, t2]");
        for (const json& e : tp) {
            const auto v = e.get<std::vector<double>>();
            if (v.size() != 2) throw validation_error("time_pairs entries must be [t1, t2]");
            cfg.time_pairs.emplace_back(v[0], v[1]);
        }
    }

    if (j.contains("diagnostics")) {
        const json& d = j["diagnostics"];
        if (!d.is_array()) throw validation_error("diagnostics must be an array of names");
        for (const json& e : d) cfg.diagnostics.push_back(parse_quantity(e.get<std::string>()));
    }

    if (j.contains("fit_window")) {
        const auto w = j["fit_window"].get<std::vector<double>>();
        if (w.size() != 2) throw validation_error("fit_window must be [lo, hi]");
        cfg.fit_window = {w[0], w[1]};
    }

    if (j.contains("expect")) {
        const std::string e = j["expect"].get<std::string>();
        if (e != "convergent" && e != "divergent")
            throw validation_error("expect must be 'convergent' or 'divergent'");
        cfg.expect = e;
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown_keys(s, {"gammas", "amplitude"}, "sweep");
        SweepConfig sw;
        sw.gammas = need(s, "gammas", "sweep").get<std::vector<double>>();
        if (s.contains("amplitude")) sw.amplitude = s["amplitude"].get<double>();
        cfg.sweep = sw;
    }

    if (j.contains("cone")) {
        const json& c = j["cone"];
        reject_unknown_keys(c, {"speed", "direction", "N"}, "cone");
        ConeConfig cc;
        if (c.contains("speed")) cc.speed = c["speed"].get<double>();
        if (c.contains("direction")) cc.direction = parse_cone_mode(c["direction"].get<std::string>());
        if (c.contains("N")) cc.N = static_cast<int>(need_num(c, "N", "cone"));
        cfg.cone = cc;
    }

    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            throw validation_error("seed must be a nonnegative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        reject_unknown_keys(t, {"dead_band", "r2_min", "exponent_tol", "drift_frac"}, "tolerances");
        if (t.contains("dead_band")) cfg.tolerances.dead_band = t["dead_band"].get<double>();
        if (t.contains("r2_min")) cfg.tolerances.r2_min = t["r2_min"].get<double>();
        if (t.contains("exponent_tol")) cfg.tolerances.exponent_tol = t["exponent_tol"].get<double>();
        if (t.contains("drift_frac")) cfg.tolerances.drift_frac = t["drift_frac"].get<double>();
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw validation_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_json_text(ss.str());
}

void ExperimentConfig::validate() const {
    grid.validate();
    symbol.validate();
    if (potential) potential->validate();

    if (!(dt > 0.0) || !std::isfinite(dt)) throw validation_error("dt must be positive and finite");
    if (potential && dt * potential->amplitude() >= 0.1)
        throw validation_error("dt * max|V| must stay below 0.1; refine dt or weaken the potential");

    std::vector<double> ts;
    if (times.present()) {
        ts = times.materialize();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (!(ts[i] > 0.0) || !std::isfinite(ts[i]))
                throw validation_error("times must be finite and positive");
            if (i > 0 && ts[i] <= ts[i - 1])
                throw validation_error("times must strictly increase");
        }
    }

    {
        double prev = 0.0;
        for (const auto& [t1, t2] : time_pairs) {
            if (!(t1 > 0.0) || !(t2 > t1))
                throw validation_error("time_pairs need 0 < t1 < t2");
            if (!(t1 > prev))
                throw validation_error("time_pairs need strictly increasing t1");
            if (!divisible(t2 - t1, dt))
                throw validation_error("time_pairs spans must be integer multiples of dt");
            prev = t1;
        }
    }

    {
        std::set<Quantity> seen;
        for (Quantity q : diagnostics)
            if (!seen.insert(q).second)
                throw validation_error(std::string("duplicate diagnostic: ") + quantity_name(q));
    }

    auto wants = [&](Quantity q) {
        return std::find(diagnostics.begin(), diagnostics.end(), q) != diagnostics.end();
    };

    if (wants(Quantity::cauchy_gap) && time_pairs.empty())
        throw validation_error("cauchy_gap needs a time_pairs schedule");
    for (Quantity q : diagnostics)
        if (q != Quantity::cauchy_gap && ts.empty())
            throw validation_error(std::string(quantity_name(q)) + " needs a times schedule");

    if (wants(Quantity::pairing) || wants(Quantity::divergence_integral)) {
        if (!potential || potential->family != PotentialFamily::long_range)
            throw validation_error(
                "pairing and the divergence witness need a long_range potential");
    }
    if (wants(Quantity::pairing) && !ts.empty() && ts.front() < 1.0)
        throw validation_error("pairing needs times >= 1");
    if (wants(Quantity::cook_integrand) && !potential)
        throw validation_error("cook_integrand needs a potential");
    if (wants(Quantity::divergence_integral)) {
        const double T = ts.back();
        for (double t : ts)
            if (!divisible(T - t, dt))
                throw validation_error(
                    "divergence witness needs T - t an integer multiple of dt for every t");
    }

    const bool needs_packet = !diagnostics.empty() || sweep.has_value();
    if (needs_packet && !packet)
        throw validation_error("diagnostics need a packet section");

    if (packet) {
        const PacketConfig& p = *packet;
        if (!(0.0 < p.eps && p.eps < p.R))
            throw validation_error("packet needs 0 < eps < R");
        if (!(p.R < grid.xi_max()))
            throw validation_error("packet annulus exceeds the grid's resolvable band");
        if (static_cast<int>(p.center.size()) != grid.dim)
            throw validation_error("packet.center length must equal grid.dim");
        double c2 = 0.0;
        for (double c : p.center) c2 += c * c;
        const double cr = std::sqrt(c2);
        if (!(p.eps < cr && cr < p.R))
            throw validation_error("packet.center must lie inside the annulus");
        if (!(p.smoothness > 0.0 && p.smoothness <= 1.0))
            throw validation_error("packet.smoothness must be in (0, 1]");
        if (!(p.tail_tol > 0.0))
            throw validation_error("packet.tail_tol must be positive");

        // cone-fits-box: the maximal relevant speed over the horizon must
        // stay inside half the box.
        double t_max = 0.0;
        if (!ts.empty()) t_max = ts.back();
        for (const auto& [t1, t2] : time_pairs) t_max = std::max(t_max, t2);
        if (t_max > 0.0) {
            double fast = 0.0;
            constexpr int K = 513;
            for (int i = 0; i < K; ++i) {
                const double r = p.eps + (p.R - p.eps) * i / (K - 1);
                fast = std::max(fast, group_speed_envelope(symbol, r));
            }
            if (!std::isfinite(fast))
                throw validation_error("group speed is unbounded on the packet band");
            if (cone && cone->speed) fast = std::max(fast, *cone->speed);
            if (!(fast * t_max < grid.box_half_length / 2.0)) {
                std::ostringstream os;
                os.precision(6);
                os << "cone-fits-box violated: speed " << fast << " times horizon " << t_max
                   << " reaches half the box (L/2 = " << grid.box_half_length / 2.0
                   << "); enlarge the grid or shorten the times";
                throw validation_error(os.str());
            }
        }
    }

    if (cone) {
        if (!cone->speed && !cone->direction)
            throw validation_error("cone needs either a speed or a direction");
        if (cone->speed && cone->direction)
            throw validation_error("cone.speed and cone.direction are mutually exclusive");
        if (cone->speed && !(*cone->speed > 0.0))
            throw validation_error("cone.speed must be positive");
        if (cone->N < 1) throw validation_error("cone.N must be >= 1");
    }
    if (wants(Quantity::cone_mass_inside) && !cone)
        throw validation_error("cone_mass_inside needs a cone section");

    if (fit_window && !(fit_window->first > 0.0 && fit_window->first < fit_window->second))
        throw validation_error("fit_window needs 0 < lo < hi");

    if (sweep) {
        if (sweep->gammas.empty()) throw validation_error("sweep.gammas must be non-empty");
        for (double g : sweep->gammas)
            if (!(g > 0.0) || !std::isfinite(g))
                throw validation_error("sweep.gammas must be positive");
        if (!(sweep->amplitude > 0.0))
            throw validation_error("sweep.amplitude must be positive");
        if (dt * sweep->amplitude >= 0.1)
            throw validation_error("dt * sweep.amplitude must stay below 0.1");
        if (ts.empty())
            throw validation_error("sweep needs a times schedule");
    }

    if (!(tolerances.dead_band >= 0.0)) throw validation_error("tolerances.dead_band must be >= 0");
    if (!(tolerances.r2_min > 0.0 && tolerances.r2_min <= 1.0))
        throw validation_error("tolerances.r2_min must be in (0, 1]");
    if (!(tolerances.exponent_tol > 0.0))
        throw validation_error("tolerances.exponent_tol must be positive");
    if (!(tolerances.drift_frac > 0.0))
        throw validation_error("tolerances.drift_frac must be positive");
}

std::pair<double, double> ExperimentConfig::effective_fit_window(
    const std::vector<double>& ts) const {
    if (fit_window) return *fit_window;
    if (ts.size() < 2) throw validation_error("fit window needs at least two sample times");
    const double lo = std::max(10.0, ts.front());
    const double hi = ts.front() + 0.9 * (ts.back() - ts.front());
    if (!(lo < hi))
        throw validation_error(
            "default fit window is empty (horizon too short); set fit_window explicitly");
    return {lo, hi};
}

std::string ExperimentConfig::canonical_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "v1|grid(" << grid.dim << "," << grid.points_per_dim << "," << grid.box_half_length
       << ")|" << symbol.describe() << "|";
    if (potential) os << potential->describe();
    os << "|";
    if (packet) {
        os << "packet(" << packet->eps << "," << packet->R << ",c=";
        for (double c : packet->center) os << c << ";";
        os << "s=" << packet->smoothness << ",tail=" << packet->tail_tol << ")";
    }
    os << "|dt=" << dt << "|times=";
    if (times.present())
        for (double t : times.materialize()) os << t << ";";
    os << "|pairs=";
    for (const auto& [a, b] : time_pairs) os << a << ":" << b << ";";
    os << "|diag=";
    for (Quantity q : diagnostics) os << quantity_name(q) << ";";
    os << "|";
    if (fit_window) os << "window(" << fit_window->first << "," << fit_window->second << ")";
    if (expect) os << "|expect=" << *expect;
    if (cone) {
        os << "|cone(";
        if (cone->speed) os << "speed=" << *cone->speed;
        if (cone->direction) os << "dir=" << cone_mode_name(*cone->direction);
        os << ",N=" << cone->N << ")";
    }
    if (sweep) {
        os << "|sweep(amp=" << sweep->amplitude << ",g=";
        for (double g : sweep->gammas) os << g << ";";
        os << ")";
    }
    os << "|tol(" << tolerances.dead_band << "," << tolerances.r2_min << ","
       << tolerances.exponent_tol << "," << tolerances.drift_frac << ")";
    os << "|seed=" << seed;
    return os.str();
}

std::uint64_t ExperimentConfig::params_hash() const {
    return fnv1a_hash(canonical_string());
}

} // namespace nlscat
