#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "permdec/calib.hpp"

#include "test_support.hpp"

using namespace permdec;
using testsup::make_grid;
using testsup::TempDir;

namespace {
std::vector<CalibPoint> demo_points() {
    return {{10.0, 20.0}, {80.0, 40.0}, {150.0, 80.0}, {220.0, 160.0}};
}
}  // namespace

TEST_CASE("construction rejects bad point sets") {
    try {
        make_calibration({{1.0, 2.0}}, "t");
        FAIL("expected TooFewPoints");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooFewPoints);
    }
    try {
        make_calibration({{1.0, 2.0}, {1.0, 3.0}}, "t");
        FAIL("expected DuplicateIntensity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateIntensity);
    }
    try {
        make_calibration({{1.0, 2.0}, {2.0, 5.0}, {3.0, 4.0}}, "t");
        FAIL("expected NonMonotone");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonMonotone);
    }
    CHECK_THROWS_AS(make_calibration({{1.0, 0.0}, {2.0, 3.0}}, "t"), Error);   // nonpositive diameter
    CHECK_THROWS_AS(make_calibration({{1.0, 2.0}, {2.0, 2.0}}, "t"), Error);   // flat is not monotone
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(make_calibration({{nan, 2.0}, {2.0, 3.0}}, "t"), Error);
}

TEST_CASE("points are sorted by intensity regardless of input order") {
    auto pts = demo_points();
    std::swap(pts[0], pts[3]);
    std::swap(pts[1], pts[2]);
    const auto c = make_calibration(pts, "t");
    CHECK(c.points().front().mriii == 10.0);
    CHECK(c.points().back().mriii == 220.0);
    CHECK(c(150.0).grain_diameter_um == 80.0);
}

TEST_CASE("exact knot queries return the stored diameter bit-for-bit") {
    const auto c = make_calibration(demo_points(), "t");
    for (const CalibPoint& p : demo_points()) {
        const auto r = c(p.mriii);
        CHECK(r.grain_diameter_um == p.grain_diameter_um);
        CHECK_FALSE(r.extrapolated);
    }
}

TEST_CASE("the midpoint of a segment maps to the geometric mean of its diameters") {
    const auto c = make_calibration(demo_points(), "t");
    const auto r = c((10.0 + 80.0) / 2.0);
    CHECK(r.grain_diameter_um == Catch::Approx(std::sqrt(20.0 * 40.0)).epsilon(1e-12));
    CHECK_FALSE(r.extrapolated);
    // Interior queries are monotone along the segment.
    CHECK(c(30.0).grain_diameter_um < c(50.0).grain_diameter_um);
}

TEST_CASE("out-of-range queries extend the end segments and are flagged") {
    const auto c = make_calibration(demo_points(), "t");
    const auto lo = c(5.0);
    CHECK(lo.extrapolated);
    CHECK(lo.grain_diameter_um < 20.0);
    const auto hi = c(250.0);
    CHECK(hi.extrapolated);
    CHECK(hi.grain_diameter_um > 160.0);
    // The low-side extension continues the first segment's log-slope.
    const double slope = (std::log(40.0) - std::log(20.0)) / (80.0 - 10.0);
    CHECK(std::log(lo.grain_diameter_um) == Catch::Approx(std::log(20.0) + (5.0 - 10.0) * slope).epsilon(1e-12));
    CHECK_THROWS_AS(c(std::numeric_limits<double>::quiet_NaN()), Error);
}

TEST_CASE("decreasing-diameter maps are accepted and interpolate the same way") {
    const auto c = make_calibration({{10.0, 160.0}, {80.0, 80.0}, {150.0, 40.0}, {220.0, 20.0}}, "t");
    CHECK(c(80.0).grain_diameter_um == 80.0);
    CHECK(c(45.0).grain_diameter_um == Catch::Approx(std::sqrt(160.0 * 80.0)).epsilon(1e-12));
    CHECK(c(30.0).grain_diameter_um > c(60.0).grain_diameter_um);
}

TEST_CASE("random monotone tables stay monotone and within hull bounds under query") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CalibPoint> pts;
        double m = testsup::uniform(rng, 0.0, 10.0);
        double d = testsup::uniform(rng, 1.0, 5.0);
        for (int i = 0; i < 8; ++i) {
            pts.push_back({m, d});
            m += testsup::uniform(rng, 1.0, 20.0);
            d *= 1.0 + testsup::uniform(rng, 0.05, 0.9);
        }
        const auto c = make_calibration(pts, "t");
        double prev = 0.0;
        for (int q = 0; q <= 100; ++q) {
            const double x = pts.front().mriii + (pts.back().mriii - pts.front().mriii) * q / 100.0;
            const auto r = c(x);
            CHECK_FALSE(r.extrapolated);
            CHECK(r.grain_diameter_um >= prev);
            CHECK(r.grain_diameter_um >= pts.front().grain_diameter_um * (1.0 - 1e-12));
            CHECK(r.grain_diameter_um <= pts.back().grain_diameter_um * (1.0 + 1e-12));
            prev = r.grain_diameter_um;
        }
    }
}

TEST_CASE("CSV round trip preserves the tag and every knot bit-for-bit") {
    TempDir td("calib-rt");
    const auto c = make_calibration(demo_points(), "scanner-A 28um");
    save_calibration_csv(c, td.file("cal.csv"));
    const auto r = load_calibration_csv(td.file("cal.csv"));
    CHECK(r.tag() == "scanner-A 28um");
    REQUIRE(r.points().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(r.points()[i].mriii == c.points()[i].mriii);
        CHECK(r.points()[i].grain_diameter_um == c.points()[i].grain_diameter_um);
    }
}

TEST_CASE("CSV parsing reports path and line on malformed input") {
    TempDir td("calib-bad");
    {
        std::ofstream out(td.file("cal.csv"));
        out << "# tag=x\nmriii,grain_diameter_um\n1.0\n";
    }
    try {
        (void)load_calibration_csv(td.file("cal.csv"));
        FAIL("expected InvalidArgument");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("cal.csv:3") != std::string::npos);
    }
    {
        std::ofstream out(td.file("nohdr.csv"));
        out << "1.0,2.0\n";
    }
    CHECK_THROWS_AS(load_calibration_csv(td.file("nohdr.csv")), Error);
    CHECK_THROWS_AS(load_calibration_csv(td.file("missing.csv")), Error);
    {
        std::ofstream out(td.file("badnum.csv"));
        out << "mriii,grain_diameter_um\n1.0,zzz\n";
    }
    CHECK_THROWS_AS(load_calibration_csv(td.file("badnum.csv")), Error);
}

TEST_CASE("untagged files load with the default tag") {
    TempDir td("calib-notag");
    {
        std::ofstream out(td.file("cal.csv"));
        out << "mriii,grain_diameter_um\n1.0,2.0\n5.0,8.0\n";
    }
    CHECK(load_calibration_csv(td.file("cal.csv")).tag() == "untagged");
}

TEST_CASE("volume decoding uses the plain voxel mean") {
    const auto c = make_calibration(demo_points(), "t");
    // A constant field's mean is the constant itself, so a knot value decodes
    // to the stored diameter exactly.
    const auto g = make_grid(3, 3, 3, 28.0, std::vector<double>(27, 150.0));
    const auto r = decode_grain_diameter(g, c);
    CHECK(r.mriii_mean == 150.0);
    CHECK(r.grain_diameter_um == 80.0);
    CHECK_FALSE(r.extrapolated);

    const auto lo = decode_grain_diameter(make_grid(1, 1, 2, 1.0, {2.0, 4.0}), c);
    CHECK(lo.mriii_mean == 3.0);
    CHECK(lo.extrapolated);
}

TEST_CASE("masked decoding restricts the mean to one class") {
    const auto c = make_calibration(demo_points(), "t");
    auto g = make_grid(2, 1, 1, 1.0, {80.0, 220.0});
    auto lg = LabelGrid::filled(2, 1, 1, 1.0, DhzClass::Intergranular1);
    lg.set(1, 0, 0, DhzClass::Intergranular2);
    const auto r1 = decode_grain_diameter(g, c, lg, DhzClass::Intergranular1);
    CHECK(r1.mriii_mean == 80.0);
    CHECK(r1.grain_diameter_um == 40.0);
    const auto r2 = decode_grain_diameter(g, c, lg, DhzClass::Intergranular2);
    CHECK(r2.grain_diameter_um == 160.0);
    CHECK_THROWS_AS(decode_grain_diameter(g, c, lg, DhzClass::Pyrite), Error);
}
