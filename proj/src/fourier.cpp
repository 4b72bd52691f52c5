#include "nlscat/fourier.hpp"

#include <fftw3.h>

#include <cmath>

#include "nlscat/errors.hpp"
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlscat {

namespace {

// One cached plan per (dim, n, sign).  Plans are created with FFTW_ESTIMATE
// so planning is deterministic, and executed via the new-array interface on
// caller-owned (possibly unaligned) buffers, which keeps execution reentrant.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get(const GridSpec& g, int sign) {
        std::lock_guard<std::mutex> lk(mu_);
        const Key key{g.dim, g.points_per_dim, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        scratch_.emplace_back(g.total_points());
        cvec& buf = scratch_.back();
        int dims[3] = {g.points_per_dim, g.points_per_dim, g.points_per_dim};
        fftw_plan p = fftw_plan_dft(
            g.dim, dims, reinterpret_cast<fftw_complex*>(buf.data()),
            reinterpret_cast<fftw_complex*>(buf.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw std::runtime_error("FFT planner failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    using Key = std::tuple<int, int, int>;
    std::mutex mu_;
    std::map<Key, fftw_plan> plans_;
    std::vector<cvec> scratch_;  // keeps planning buffers alive
};

// e^{+i xi_k L} per axis = (-1)^{k mod 2}: flips the sign of odd bins.
void apply_parity_signs(const GridSpec& g, cvec& data) {
    int idx[3];
    for (std::size_t f = 0; f < data.size(); ++f) {
        g.unravel(f, idx);
        int parity = 0;
        for (int a = 0; a < g.dim; ++a) parity ^= (idx[a] & 1);
        if (parity) data[f] = -data[f];
    }
}

void scale(cvec& data, double s) {
    for (cplx& z : data) z *= s;
}

}  // namespace

void dft_forward(const GridSpec& g, cvec& data) {
    if (data.size() != g.total_points())
        throw validation_error("transform buffer does not match the grid");
    fftw_plan p = PlanCache::instance().get(g, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    apply_parity_signs(g, data);
    double s = 1.0;
    const double per_axis = g.spacing() / std::sqrt(2.0 * 3.141592653589793238462643383279502884);
    for (int a = 0; a < g.dim; ++a) s *= per_axis;
    scale(data, s);
}

void dft_backward(const GridSpec& g, cvec& data) {
    if (data.size() != g.total_points())
        throw validation_error("transform buffer does not match the grid");
    apply_parity_signs(g, data);
    fftw_plan p = PlanCache::instance().get(g, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    double s = 1.0;
    const double per_axis = g.xi_spacing() / std::sqrt(2.0 * 3.141592653589793238462643383279502884);
    for (int a = 0; a < g.dim; ++a) s *= per_axis;
    scale(data, s);
}

WavePacket to_fourier(const WavePacket& p) {
    if (p.space != Space::position)
        throw validation_error("to_fourier expects a position-space state");
    WavePacket out = p;
    out.space = Space::frequency;
    dft_forward(p.grid, out.values);
    return out;
}

WavePacket from_fourier(const WavePacket& p) {
    if (p.space != Space::frequency)
        throw validation_error("from_fourier expects a frequency-space state");
    WavePacket out = p;
    out.space = Space::position;
    dft_backward(p.grid, out.values);
    return out;
}

} // namespace nlscat
