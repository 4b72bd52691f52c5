#include <doctest.h>

#include <nlscat/fourier.hpp>
#include <nlscat/grid.hpp>
#include <nlscat/packet.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <vector>

using namespace nlscat;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;

WavePacket random_packet(const GridSpec& g, unsigned seed) {
    WavePacket p;
    p.grid = g;
    p.space = Space::position;
    p.values.resize(g.total_points());
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : p.values) v = cplx(u(rng), u(rng));
    return p;
}

double max_abs_diff(const cvec& a, const cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("grid geometry") {
    const GridSpec g(1, 8, 4.0);
    CHECK(g.spacing() == doctest::Approx(1.0));
    CHECK(g.xi_spacing() == doctest::Approx(pi / 4.0));
    CHECK(g.xi_max() == doctest::Approx(pi));
    CHECK(g.total_points() == 8);
    CHECK(g.coord(0) == doctest::Approx(-4.0));
    CHECK(g.coord(4) == doctest::Approx(0.0));
    // FFT frequency layout: second half wraps to negative bins
    CHECK(g.xi(1) == doctest::Approx(pi / 4.0));
    CHECK(g.xi(7) == doctest::Approx(-pi / 4.0));
    CHECK(g.xi(4) == doctest::Approx(-pi));

    const GridSpec g3(3, 4, 2.0);
    CHECK(g3.total_points() == 64);
    int idx[3];
    g3.unravel(37, idx);  // 37 = 2*16 + 1*4 + 1
    CHECK(idx[0] == 2);
    CHECK(idx[1] == 1);
    CHECK(idx[2] == 1);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(1, 12, 4.0), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(GridSpec(0, 8, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, 8, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(1, 8, -1.0), std::invalid_argument);
}

TEST_CASE("forward transform matches the quadratic-time definition") {
    // direct sum F(xi_k) = dx/sqrt(2 pi) * sum_j phi(x_j) e^{-i xi_k x_j}
    const GridSpec g(1, 64, 5.0);
    const auto p = random_packet(g, 42);
    const auto F = to_fourier(p);
    REQUIRE(F.space == Space::frequency);
    const double dx = g.spacing();
    for (int k = 0; k < 64; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < 64; ++j)
            acc += p.values[j] * std::exp(cplx(0.0, -g.xi(k) * g.coord(j)));
        acc *= dx / std::sqrt(2.0 * pi);
        CHECK(std::abs(F.values[k] - acc) < 1e-12);
    }
}

TEST_CASE("plane wave concentrates on a single frequency bin") {
    const GridSpec g(1, 128, 10.0);
    const int k0 = 9;
    WavePacket p;
    p.grid = g;
    p.space = Space::position;
    p.values.resize(g.total_points());
    for (int j = 0; j < 128; ++j)
        p.values[j] = std::exp(cplx(0.0, g.xi(k0) * g.coord(j)));
    const auto F = to_fourier(p);
    const double peak = std::abs(F.values[k0]);
    CHECK(peak == doctest::Approx(2.0 * g.box_half_length / std::sqrt(2.0 * pi)));
    for (int k = 0; k < 128; ++k)
        if (k != k0) CHECK(std::abs(F.values[k]) < 1e-12 * peak);
}

TEST_CASE("transforms are unitary and invert each other") {
    for (int dim : {1, 2}) {
        const GridSpec g(dim, dim == 1 ? 256 : 32, 6.0);
        const auto p = random_packet(g, 7 + dim);
        const auto F = to_fourier(p);
        CHECK(norm(F) == doctest::Approx(norm(p)).epsilon(1e-12));
        const auto back = from_fourier(F);
        REQUIRE(back.space == Space::position);
        CHECK(max_abs_diff(back.values, p.values) < 1e-12);
        // Parseval for the inner product as well
        const auto q = random_packet(g, 99 + dim);
        const auto G = to_fourier(q);
        CHECK(std::abs(inner_product(p, q) - inner_product(F, G)) < 1e-12);
    }
}

TEST_CASE("gaussian transform matches the closed form") {
    // e^{-x^2/2} is a fixed point of the unitary continuum transform
    const GridSpec g(1, 256, 20.0);
    WavePacket p;
    p.grid = g;
    p.space = Space::position;
    p.values.resize(g.total_points());
    for (int j = 0; j < 256; ++j) {
        const double x = g.coord(j);
        p.values[j] = std::exp(-0.5 * x * x);
    }
    const auto F = to_fourier(p);
    for (int k = 0; k < 256; ++k) {
        const double xi = g.xi(k);
        if (std::abs(xi) > 6.0) continue;  // below double precision anyway
        CHECK(std::abs(F.values[k] - std::exp(-0.5 * xi * xi)) < 1e-10);
    }
}

TEST_CASE("transform requires the matching representation") {
    const GridSpec g(1, 8, 1.0);
    auto p = random_packet(g, 1);
    const auto F = to_fourier(p);
    CHECK_THROWS_AS(to_fourier(F), std::invalid_argument);
    CHECK_THROWS_AS(from_fourier(p), std::invalid_argument);
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
    const GridSpec g(1, 64, 3.0);
    const auto a = random_packet(g, 5);
    WavePacket ia = a;
    for (auto& v : ia.values) v *= cplx(0.0, 1.0);
    const double n2 = norm(a) * norm(a);
    const cplx ip = inner_product(a, ia);
    CHECK(std::abs(ip - cplx(0.0, n2)) < 1e-12 * n2);
    CHECK(std::abs(inner_product(a, a).real() - n2) < 1e-12 * n2);
}

TEST_CASE("annulus packet is normalized and band-limited") {
    const GridSpec g(1, 4096, 200.0);
    const auto p = make_annulus_packet(g, 0.5, 2.0, {1.0}, 0.2);
    REQUIRE(p.space == Space::position);
    CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-12));
    const auto F = to_fourier(p);
    double outside = 0.0, negative = 0.0;
    for (int k = 0; k < 4096; ++k) {
        const double xi = g.xi(k);
        const double m = std::norm(F.values[k]);
        if (std::abs(xi) < 0.5 || std::abs(xi) > 2.0) outside += m;
        if (xi < 0.0) negative += m;
    }
    outside *= F.measure_weight();
    negative *= F.measure_weight();
    CHECK(outside < 1e-20);
    // positive center momentum -> outgoing half-line only
    CHECK(negative < 1e-20);
}

TEST_CASE("annulus packet spatial localization regression") {
    const GridSpec g(1, 4096, 200.0);
    const auto p = make_annulus_packet(g, 0.5, 2.0, {1.0}, 0.2);
    const double n0 = position_weighted_norm(p, 0);
    CHECK(n0 == doctest::Approx(norm(p)).epsilon(1e-13));
    const double n1 = position_weighted_norm(p, 1);
    const double xnorm = std::sqrt(n1 * n1 - n0 * n0);  // ||x phi||
    CHECK(xnorm < 50.0);
    CHECK(xnorm > 1.0);  // it is a spread-out bump, not a delta
    const double tail = boundary_tail_ratio(p);
    CHECK(tail < 1e-4);
    CHECK(tail > 0.0);
}

TEST_CASE("annulus packet argument validation") {
    const GridSpec g(1, 512, 40.0);
    CHECK_THROWS_AS(make_annulus_packet(g, 2.0, 0.5, {1.0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_annulus_packet(g, 0.5, 1e9, {1.0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_annulus_packet(g, 0.5, 2.0, {3.0}, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_annulus_packet(g, 0.5, 2.0, {1.0, 1.0}, 0.2),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_annulus_packet(g, 0.5, 2.0, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("position weighted norm on a gaussian") {
    // normalized e^{-x^2/2}: ||x phi||^2 = 1/2, ||<x> phi||^2 = 3/2
    const GridSpec g(1, 256, 20.0);
    WavePacket p;
    p.grid = g;
    p.space = Space::position;
    p.values.resize(g.total_points());
    const double amp = std::pow(pi, -0.25);
    for (int j = 0; j < 256; ++j) {
        const double x = g.coord(j);
        p.values[j] = amp * std::exp(-0.5 * x * x);
    }
    CHECK(position_weighted_norm(p, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(position_weighted_norm(p, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-8));
    CHECK_THROWS_AS(position_weighted_norm(p, -1), std::invalid_argument);
    // <x>^200 overflows double range on a box of radius 20
    CHECK_THROWS_AS(position_weighted_norm(p, 200), std::invalid_argument);
}

TEST_CASE("cone mass splits a gaussian like the error function") {
    const GridSpec g(1, 4096, 20.0);
    WavePacket p;
    p.grid = g;
    p.space = Space::position;
    p.values.resize(g.total_points());
    const double amp = std::pow(pi, -0.25);
    for (int j = 0; j < 4096; ++j) {
        const double x = g.coord(j);
        p.values[j] = amp * std::exp(-0.5 * x * x);
    }
    // |phi|^2 = e^{-x^2}/sqrt(pi), so the mass in |x| <= 1 is erf(1)
    const auto r = cone_mass(p, 1.0, 1.0);
    CHECK(r.inside_mass == doctest::Approx(std::erf(1.0)).epsilon(1e-4));
    CHECK(r.inside_mass + r.outside_mass ==
          doctest::Approx(norm(p) * norm(p)).epsilon(1e-12));
    CHECK(r.t == 1.0);
    CHECK(r.threshold_speed == 1.0);
    // mass inside grows with the horizon
    const auto r2 = cone_mass(p, 1.0, 3.0);
    CHECK(r2.inside_mass > r.inside_mass);
}

TEST_CASE("cone mass argument validation") {
    const GridSpec g(1, 64, 4.0);
    const auto p = random_packet(g, 3);
    CHECK_THROWS_AS(cone_mass(p, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cone_mass(p, 1.0, 0.0), std::invalid_argument);
    // cone radius hitting the box boundary is a runtime failure, not bad input
    CHECK_THROWS_AS(cone_mass(p, 1.0, 4.0), std::runtime_error);
    const auto F = to_fourier(p);
    CHECK_THROWS_AS(cone_mass(F, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("packet snapshot round-trips bitwise") {
    const GridSpec g(2, 16, 3.0);
    const auto p = random_packet(g, 11);
    const std::string path = "test_packet_roundtrip.bin";
    write_packet(path, p);
    const auto q = read_packet(path);
    CHECK(q.grid == p.grid);
    CHECK(q.space == p.space);
    REQUIRE(q.values.size() == p.values.size());
    for (std::size_t i = 0; i < p.values.size(); ++i)
        CHECK(q.values[i] == p.values[i]);  // bitwise
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_packet("no_such_packet.bin"), std::runtime_error);
}

} // TEST_SUITE("lattice")
