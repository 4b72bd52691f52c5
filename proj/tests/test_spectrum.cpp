#include <doctest.h>

#include <nlscat/spectrum.hpp>

#include <cmath>
#include <stdexcept>

using namespace nlscat;

TEST_SUITE("spectrum") {

TEST_CASE("spectral interval for unbounded symbols is the half line") {
    for (const auto& sym : {SymbolSpec::fractional(1.0), SymbolSpec::fractional(0.25),
                            SymbolSpec::relativistic(2.0), SymbolSpec::logarithmic()}) {
        const auto iv = spectral_interval(sym);
        CHECK(iv.lower == doctest::Approx(0.0));
        CHECK(iv.unbounded_above);
    }
}

TEST_CASE("tabulated symbols have a bounded essential range") {
    const auto sym = SymbolSpec::tabulated({0.0, 1.0, 2.0, 4.0}, {0.0, 1.0, 1.5, 2.0});
    const auto iv = spectral_interval(sym);
    CHECK(iv.lower == doctest::Approx(0.0));
    CHECK(!iv.unbounded_above);
    // constant extrapolation caps the range at the last knot value
    CHECK(iv.upper == doctest::Approx(2.0));
}

TEST_CASE("zero set is empty for strictly increasing symbols") {
    const auto z = detect_zero_set(SymbolSpec::fractional(1.0), 0.1, 10.0);
    CHECK(z.kind == ZeroSetKind::empty);
    CHECK(z.points.empty());
    CHECK(z.intervals.empty());
}

TEST_CASE("flat band produces an interval zero set with refined endpoints") {
    const auto z = detect_zero_set(SymbolSpec::flat_band(1.0, 2.0, 1.0), 0.1, 5.0);
    REQUIRE(z.kind == ZeroSetKind::contains_interval);
    REQUIRE(z.intervals.size() == 1);
    CHECK(z.intervals[0].first == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(z.intervals[0].second == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("a tabulated plateau from equal knot values is caught as discrete or flat") {
    // two knots at exactly the same value create a genuine psi' zero between
    // them; the stretch is short, so it may refine to an isolated point
    const auto sym = SymbolSpec::tabulated({0.0, 0.9999, 1.0001, 2.0},
                                           {0.0, 1.0, 1.0, 1.5});
    const auto z = detect_zero_set(sym, 0.5, 1.5, 512);
    CHECK(z.kind != ZeroSetKind::empty);
    if (z.kind == ZeroSetKind::discrete) {
        REQUIRE(!z.points.empty());
        CHECK(z.points[0] == doctest::Approx(1.0).epsilon(1e-2));
    } else {
        REQUIRE(!z.intervals.empty());
        CHECK(z.intervals[0].first == doctest::Approx(1.0).epsilon(1e-2));
    }
}

TEST_CASE("zero set scan validates its range") {
    CHECK_THROWS_AS(detect_zero_set(SymbolSpec::fractional(1.0), 5.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(detect_zero_set(SymbolSpec::fractional(1.0), 1.0, 5.0, 8),
                    std::invalid_argument);
}

TEST_CASE("report verdict follows the zero-set dichotomy") {
    const auto ac = build_spectrum_report(SymbolSpec::fractional(1.0), 0.1, 10.0);
    CHECK(ac.verdict == SpectrumVerdict::absolutely_continuous);
    CHECK(ac.zero_set_kind == ZeroSetKind::empty);
    CHECK(ac.unbounded_above);

    const auto fb = build_spectrum_report(SymbolSpec::flat_band(1.0, 2.0, 1.0), 0.1, 10.0);
    CHECK(fb.verdict == SpectrumVerdict::has_infinite_multiplicity_eigenvalue);
    CHECK(fb.zero_set_kind == ZeroSetKind::contains_interval);

    // a discrete zero (isolated critical point) is not an eigenvalue
    const auto disc = build_spectrum_report(
        SymbolSpec::tabulated({0.0, 0.9999, 1.0001, 2.0}, {0.0, 1.0, 1.0, 1.5}), 0.5, 1.5,
        512);
    if (disc.zero_set_kind == ZeroSetKind::discrete)
        CHECK(disc.verdict == SpectrumVerdict::absolutely_continuous);
}

TEST_CASE("flat band shell states are stationary eigenvectors") {
    const GridSpec g(1, 4096, 200.0);
    const auto demo = flat_band_eigen_demo(SymbolSpec::flat_band(1.0, 2.0, 1.0), g);
    CHECK(demo.mode_count >= 10);
    CHECK(demo.defect <= 1e-10);
    CHECK(demo.predicted <= 1e-10);
    REQUIRE(demo.times.size() == 3);
    CHECK(demo.times[2] == doctest::Approx(100.0));
}

TEST_CASE("the same shell moves under a dispersive symbol") {
    // control: with psi strictly increasing the shell indicator is far from
    // any eigenvector, so the defect is order one already by t = 10
    const GridSpec g(1, 4096, 200.0);
    const auto demo = shell_stationarity_defect(SymbolSpec::fractional(1.0), g, 1.0, 2.0,
                                                {1.0, 10.0});
    CHECK(demo.defect >= 0.1);
    CHECK(demo.mode_count >= 10);
    // the multiplier-side prediction tracks the measured defect
    CHECK(demo.defect == doctest::Approx(demo.predicted).epsilon(1e-8));
}

TEST_CASE("eigen demo validates its inputs") {
    const GridSpec g(1, 4096, 200.0);
    CHECK_THROWS_AS(flat_band_eigen_demo(SymbolSpec::fractional(1.0), g),
                    std::invalid_argument);
    // a tiny box resolves no shell modes
    const GridSpec tiny(1, 8, 1.0);
    CHECK_THROWS_AS(flat_band_eigen_demo(SymbolSpec::flat_band(1.0, 1.001, 1.0), tiny),
                    std::invalid_argument);
}

} // TEST_SUITE("spectrum")
