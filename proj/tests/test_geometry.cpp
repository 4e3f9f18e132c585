#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "permdec/geometry.hpp"

#include "test_support.hpp"

using namespace permdec;

TEST_CASE("throat shape coefficients carry their analytic values") {
    // Frozen decimal expansions of 4 - pi, sqrt(3) - pi/2, (4 - pi)/4, 0.02731 pi.
    CHECK(kConcaveDiamondCoeff == 0.8584073464102069);
    CHECK(kConcaveTriangleCoeff == 0.16125448077398064);
    CHECK(throat_to_pore_ratio_2d() == 0.21460183660255172);
    CHECK(kRhombohedralPiFormCoeff == 0.08579689536953725);
    CHECK(throat_to_pore_ratio_2d() == kConcaveDiamondCoeff / 4.0);
}

TEST_CASE("2D pore and throat areas scale with the squared grain radius") {
    CHECK(pore_area_2d(GrainRadius(2.0)) == 16.0);
    CHECK(throat_area_2d(ThroatShape::ConcaveDiamond, GrainRadius(1.0)) == kConcaveDiamondCoeff);
    CHECK(throat_area_2d(ThroatShape::ConcaveTriangle, GrainRadius(1.0)) == kConcaveTriangleCoeff);
    std::mt19937 rng(11);
    for (int i = 0; i < 20; ++i) {
        const double r = testsup::uniform(rng, 0.5, 500.0);
        for (ThroatShape s : {ThroatShape::ConcaveDiamond, ThroatShape::ConcaveTriangle}) {
            CHECK(throat_area_2d(s, GrainRadius(2.0 * r)) == 4.0 * throat_area_2d(s, GrainRadius(r)));
            CHECK(throat_area_2d(s, GrainRadius(r)) < pore_area_2d(GrainRadius(r)));
        }
    }
}

TEST_CASE("grain radius must be strictly positive") {
    CHECK_THROWS_AS(GrainRadius(0.0), Error);
    CHECK_THROWS_AS(GrainRadius(-3.0), Error);
}

TEST_CASE("packing table: stated constants, face inventory, and the division identity") {
    const auto cubic = packing_geometry(PackingConfig::Cubic);
    CHECK(cubic.n_diamond_faces == 6);
    CHECK(cubic.n_triangle_faces == 0);
    CHECK(cubic.total_throat_area_coeff == 5.148);
    CHECK(cubic.n_pore_throats == 6);
    CHECK(cubic.effective_throat_coeff == 0.429);

    const auto tri = packing_geometry(PackingConfig::Triclinic);
    CHECK(tri.n_diamond_faces == 4);
    CHECK(tri.n_triangle_faces == 4);
    CHECK(tri.total_throat_area_coeff == 4.08);
    CHECK(tri.n_pore_throats == 8);
    CHECK(tri.effective_throat_coeff == 0.255);

    const auto rho = packing_geometry(PackingConfig::Rhombohedral);
    CHECK(rho.n_diamond_faces == 2);
    CHECK(rho.n_triangle_faces == 8);
    CHECK(rho.total_throat_area_coeff == 1.716);
    CHECK(rho.n_pore_throats == 10);
    CHECK(rho.effective_throat_coeff == 0.0858);

    for (PackingConfig c : all_packings) {
        const auto g = packing_geometry(c);
        CHECK(g.n_cv_inlets == 2);
        // The effective coefficient is exactly total / (throats x inlets).
        CHECK(g.effective_throat_coeff ==
              g.total_throat_area_coeff / (g.n_pore_throats * g.n_cv_inlets));
    }
}

TEST_CASE("face inventory recomputation flags only the rhombohedral total") {
    const auto cubic = packing_geometry(PackingConfig::Cubic);
    const auto tri = packing_geometry(PackingConfig::Triclinic);
    const auto rho = packing_geometry(PackingConfig::Rhombohedral);

    CHECK(cubic.recomputed_area_coeff == 6 * kConcaveDiamondCoeff);
    CHECK(cubic.recomputed_area_coeff == Catch::Approx(5.150444078461241).epsilon(1e-14));
    CHECK(tri.recomputed_area_coeff == Catch::Approx(4.07864730873675).epsilon(1e-14));
    CHECK(rho.recomputed_area_coeff == Catch::Approx(3.006850539012259).epsilon(1e-14));

    CHECK_FALSE(cubic.area_coeff_discrepancy);
    CHECK_FALSE(tri.area_coeff_discrepancy);
    CHECK(rho.area_coeff_discrepancy);

    // The diagnostic never alters the stated chain.
    CHECK(rho.effective_throat_coeff == 0.0858);
    CHECK(permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(1.0)) == 0.0858);
}

TEST_CASE("pi-form restatement agrees with the effective coefficient to a part in ten thousand") {
    CHECK(std::abs(kRhombohedralPiFormCoeff - 0.0858) / 0.0858 < 1e-3);
}

TEST_CASE("permeability hand values and scaling") {
    CHECK(permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(1.0)) == 0.0858);
    CHECK(permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(100.0)) == 858.0);
    CHECK(effective_pore_throat_size_3d(PackingConfig::Rhombohedral, GrainRadius(100.0)) == 858.0);

    std::mt19937 rng(13);
    double prev = 0.0;
    for (double r = 1.0; r <= 1024.0; r *= 2.0) {
        const double k = permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(r));
        CHECK(k > prev);
        prev = k;
    }
    for (int i = 0; i < 30; ++i) {
        const double r = testsup::uniform(rng, 0.5, 800.0);
        for (PackingConfig c : all_packings) {
            CHECK(permeability_from_grain_radius(c, GrainRadius(2.0 * r)) ==
                  4.0 * permeability_from_grain_radius(c, GrainRadius(r)));
        }
    }
}

TEST_CASE("radius-permeability round trip over every packing") {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        const double r = testsup::uniform(rng, 1.0, 1000.0);
        for (PackingConfig c : all_packings) {
            const double k = permeability_from_grain_radius(c, GrainRadius(r));
            CHECK(grain_radius_from_permeability(c, k).r_g_um == Catch::Approx(r).epsilon(1e-12));
        }
    }
    try {
        (void)grain_radius_from_permeability(PackingConfig::Cubic, 0.0);
        FAIL("expected NonPositivePermeability");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositivePermeability);
    }
    CHECK_THROWS_AS(grain_radius_from_permeability(PackingConfig::Cubic, -1.0), Error);
}

TEST_CASE("porosity depends only on the packing, not the grain size") {
    CHECK(nominal_porosity(PackingConfig::Rhombohedral) == 0.25);
    CHECK(nominal_porosity(PackingConfig::Cubic) == 0.4764012244017012);
    try {
        (void)nominal_porosity(PackingConfig::Triclinic);
        FAIL("expected PorosityNotSpecified");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PorosityNotSpecified);
    }
    CHECK(packing_geometry(PackingConfig::Rhombohedral).nominal_porosity == 0.25);
    CHECK(packing_geometry(PackingConfig::Cubic).nominal_porosity == 0.4764012244017012);
    CHECK_FALSE(packing_geometry(PackingConfig::Triclinic).nominal_porosity.has_value());
}

TEST_CASE("cubic porosity matches a Monte Carlo of one sphere in its bounding cube") {
    // One grain of radius 1/2 centred in a unit cell; the void fraction sampled
    // geometrically must agree with the closed form within 3 sigma.
    std::mt19937 rng(20260814);
    const int n = 200000;
    int outside = 0;
    for (int i = 0; i < n; ++i) {
        const double x = testsup::uniform01(rng) - 0.5;
        const double y = testsup::uniform01(rng) - 0.5;
        const double z = testsup::uniform01(rng) - 0.5;
        if (x * x + y * y + z * z > 0.25) ++outside;
    }
    const double p = nominal_porosity(PackingConfig::Cubic);
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(outside) / n - p) < 3.0 * sigma);
}

TEST_CASE("packing names round-trip") {
    for (PackingConfig c : all_packings) CHECK(packing_from_name(std::string(packing_name(c))) == c);
    CHECK_THROWS_AS(packing_from_name("hexagonal"), Error);
}
