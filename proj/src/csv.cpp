#include "nlscat/csv.hpp"
#include "nlscat/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlscat {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_hash(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_series_csv(const std::string& path, const TimeSeries& series,
                      std::uint64_t params_hash) {
    std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
    if (!os) throw std::runtime_error("cannot open series file for writing: " + path);
    os << "quantity,params_hash\n";
    os << quantity_name(series.quantity) << "," << fmt_hash(params_hash) << "\n";
    os << "t,value\n";
    for (const auto& [t, v] : series.samples) os << fmt17(t) << "," << fmt17(v) << "\n";
    if (series.fit) {
        const Fit& f = *series.fit;
        os << "#fit exponent=" << fmt17(f.exponent) << " prefactor=" << fmt17(f.prefactor)
           << " r2=" << fmt17(f.r2) << " window_lo=" << fmt17(f.window_lo)
           << " window_hi=" << fmt17(f.window_hi) << "\n";
    }
    if (!os) throw std::runtime_error("short write on series file: " + path);
}

SeriesFile read_series_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open series file: " + path);
    std::string line;

    auto bad = [&](const std::string& why) {
        return std::runtime_error("malformed series file " + path + ": " + why);
    };

    if (!std::getline(is, line) || line != "quantity,params_hash")
        throw bad("first header line");
    if (!std::getline(is, line)) throw bad("missing identity line");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw bad("identity line has no comma");
    SeriesFile out;
    out.series.quantity = parse_quantity(line.substr(0, comma));
    {
        const std::string hex = line.substr(comma + 1);
        if (hex.size() != 16) throw bad("params hash must be 16 hex digits");
        out.params_hash = std::strtoull(hex.c_str(), nullptr, 16);
    }
    if (!std::getline(is, line) || line != "t,value") throw bad("column header line");

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("#fit ", 0) != 0) throw bad("unknown comment line");
            Fit f;
            std::istringstream ss(line.substr(5));
            std::string tok;
            int seen = 0;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw bad("fit token without '='");
                const std::string key = tok.substr(0, eq);
                const double val = std::strtod(tok.c_str() + eq + 1, nullptr);
                if (key == "exponent") f.exponent = val;
                else if (key == "prefactor") f.prefactor = val;
                else if (key == "r2") f.r2 = val;
                else if (key == "window_lo") f.window_lo = val;
                else if (key == "window_hi") f.window_hi = val;
                else throw bad("unknown fit field: " + key);
                ++seen;
            }
            if (seen != 5) throw bad("fit line must carry 5 fields");
            out.series.fit = f;
            continue;
        }
        const auto c = line.find(',');
        if (c == std::string::npos) throw bad("sample row has no comma");
        char* end = nullptr;
        const double t = std::strtod(line.c_str(), &end);
        if (end != line.c_str() + c) throw bad("sample row t is not a number");
        const double v = std::strtod(line.c_str() + c + 1, &end);
        if (end != line.c_str() + line.size()) throw bad("sample row value is not a number");
        out.series.samples.emplace_back(t, v);
    }
    if (out.series.samples.empty()) throw bad("no samples");
    return out;
}

void write_field_csv(const std::string& path, const GridSpec& grid,
                     const std::vector<double>& field, const std::string& value_name) {
    grid.validate();
    if (field.size() != grid.total_points())
        throw validation_error("field size does not match the grid");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open field file for writing: " + path);
    for (int a = 0; a < grid.dim; ++a) os << "x" << (a + 1) << ",";
    os << value_name << "\n";
    std::vector<int> idx(grid.dim);
    for (std::size_t i = 0; i < field.size(); ++i) {
        grid.unravel(i, idx.data());
        for (int a = 0; a < grid.dim; ++a) os << fmt17(grid.coord(idx[a])) << ",";
        os << fmt17(field[i]) << "\n";
    }
    if (!os) throw std::runtime_error("short write on field file: " + path);
}

} // namespace nlscat
