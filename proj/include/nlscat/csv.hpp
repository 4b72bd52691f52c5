#pragma once
#include "nlscat/diagnostics.hpp"
#include "nlscat/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nlscat {

// Series files are three header lines, then one row per sample with full
// double precision (%.17g), LF line endings:
//   quantity,params_hash
//   <quantity>,<16-hex-digit hash>
//   t,value
//   <t>,<value>
//   ...
//   #fit exponent=... prefactor=... r2=... window_lo=... window_hi=...
// The trailing #fit comment is present only when series.fit is set.
// Identical inputs produce byte-identical files.
void write_series_csv(const std::string& path, const TimeSeries& series,
                      std::uint64_t params_hash);

struct SeriesFile {
    TimeSeries series;  // fit populated from the #fit line when present
    std::uint64_t params_hash = 0;
};

SeriesFile read_series_csv(const std::string& path);  // validates structure

// Real scalar field sampled on a grid (e.g. a potential): header
// x1[,x2[,x3]],<value_name>; one row per cell in row-major order.
void write_field_csv(const std::string& path, const GridSpec& grid,
                     const std::vector<double>& field, const std::string& value_name);

// FNV-1a 64-bit over a canonical parameter string.
std::uint64_t fnv1a_hash(const std::string& text);

} // namespace nlscat
