#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "permdec/micromodel.hpp"

#include "test_support.hpp"

using namespace permdec;
using testsup::make_grid;

namespace {
// Full-box permeability map (no cylinder masking) built from a per-voxel rule.
template <class F>
PermeabilityMap box_map(int nx, int ny, int nz, double voxel_um, F&& k_of) {
    std::vector<double> v(static_cast<std::size_t>(nx) * ny * nz);
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                v[static_cast<std::size_t>(x) + static_cast<std::size_t>(nx) * (y + static_cast<std::size_t>(ny) * z)] =
                    k_of(x, y, z);
    return make_grid(nx, ny, nz, voxel_um, std::move(v), ValueKind::PermeabilityMilliDarcy);
}
}  // namespace

TEST_CASE("the default cylinder voxelizes to 38 x 38 x 78 at a 1000 um voxel") {
    MicromodelSpec spec;
    const auto m = generate_micromodel(spec);
    CHECK(m.kmap.nx == 38);
    CHECK(m.kmap.ny == 38);
    CHECK(m.kmap.nz == 78);
    CHECK(m.kmap.voxel_size_um == 1000.0);
    CHECK(m.labels.nx == 38);

    // Corners sit outside the circular cross-section: impermeable matrix.
    CHECK(m.labels.at(0, 0, 0) == DhzClass::Pyrite);
    CHECK(m.kmap.at(0, 0, 0) == 0.0);
    // The centre is rock type 1 (the fine mesh) at its grain-law permeability.
    CHECK(m.labels.at(19, 19, 0) == DhzClass::Intergranular1);
    CHECK(m.kmap.at(19, 19, 0) ==
          permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(1000.0)));
    CHECK(m.table.complete());
    CHECK(m.table.get(DhzClass::OpenVug).k_mD == 0.0);
}

TEST_CASE("voxel sizes that do not tile the geometry are rejected") {
    MicromodelSpec spec;
    spec.voxel_size_um = 700.0;  // does not divide the 2000 um fine mesh
    CHECK_THROWS_AS(generate_micromodel(spec), Error);
    spec.voxel_size_um = 999.0;  // divides nothing
    CHECK_THROWS_AS(generate_micromodel(spec), Error);
    spec = {};
    spec.voxel_size_um = -5.0;
    CHECK_THROWS_AS(generate_micromodel(spec), Error);
    CHECK(detail::exact_voxel_count(38000.0, 1000.0, "d") == 38);
    CHECK_THROWS_AS(detail::exact_voxel_count(38000.0, 4000.0, "d"), Error);
}

TEST_CASE("two-zone layouts split along the expected axis") {
    MicromodelSpec spec;
    spec.voxel_size_um = 2000.0;  // 19 x 19 x 39, faster to build
    spec.sample = SampleLayout::SerialTwoZone;
    const auto serial = generate_micromodel(spec);
    CHECK(serial.labels.at(9, 9, 0) == DhzClass::Intergranular1);
    CHECK(serial.labels.at(9, 9, 38) == DhzClass::Intergranular2);

    spec.sample = SampleLayout::ParallelTwoZone;
    const auto par = generate_micromodel(spec);
    CHECK(par.labels.at(9, 3, 0) == DhzClass::Intergranular1);
    CHECK(par.labels.at(9, 15, 0) == DhzClass::Intergranular2);
    // The split runs the full height.
    CHECK(par.labels.at(9, 3, 38) == DhzClass::Intergranular1);

    spec.sample = SampleLayout::Homogeneous4000;
    const auto coarse = generate_micromodel(spec);
    CHECK(coarse.labels.at(9, 9, 19) == DhzClass::Intergranular2);
    CHECK(coarse.kmap.at(9, 9, 19) ==
          permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(2000.0)));
}

TEST_CASE("generation is deterministic in the layout parameters and seed") {
    MicromodelSpec spec;
    spec.voxel_size_um = 2000.0;
    spec.sample = SampleLayout::ArbitraryHeterogeneous;
    spec.seed = 12345;
    const auto a = generate_micromodel(spec);
    const auto b = generate_micromodel(spec);
    CHECK(a.kmap.values == b.kmap.values);
    CHECK(a.labels.labels == b.labels.labels);

    spec.seed = 54321;
    const auto c = generate_micromodel(spec);
    CHECK(a.kmap.values != c.kmap.values);
    // Both rock types appear inside the cylinder.
    const auto f = class_fractions(c.labels);
    CHECK(f[class_id(DhzClass::Intergranular1)] > 0.0);
    CHECK(f[class_id(DhzClass::Intergranular2)] > 0.0);
}

TEST_CASE("a caller-supplied class table overrides the grain-law defaults") {
    MicromodelSpec spec;
    spec.voxel_size_um = 2000.0;
    ClassPermeabilityTable t;
    t.set(DhzClass::Pyrite, {.k_mD = 0.0});
    t.set(DhzClass::OpenVug, {.k_mD = 0.0});
    t.set(DhzClass::Intergranular1, {.k_mD = 123.0});
    t.set(DhzClass::Intergranular2, {.k_mD = 456.0});
    const auto m = generate_micromodel(spec, t);
    CHECK(m.kmap.at(9, 9, 0) == 123.0);
    ClassPermeabilityTable partial;
    partial.set(DhzClass::Pyrite, {.k_mD = 0.0});
    CHECK_THROWS_AS(generate_micromodel(spec, partial), Error);
}

TEST_CASE("the flow oracle reproduces a constant box exactly to solver tolerance") {
    const auto m = box_map(4, 4, 8, 1000.0, [](int, int, int) { return 67.633; });
    const auto s = resistor_oracle(m);
    CHECK(s.percolated);
    CHECK(s.k_eff_mD == Catch::Approx(67.633).epsilon(1e-8));
    CHECK(s.residual <= 1e-8);
    CHECK(s.iterations > 0);
}

TEST_CASE("the flow oracle matches the serial harmonic law on a layered box") {
    const auto m = box_map(6, 6, 12, 500.0, [](int, int, int z) { return z < 6 ? 100.0 : 300.0; });
    const auto s = resistor_oracle(m);
    CHECK(s.k_eff_mD == Catch::Approx(150.0).epsilon(1e-7));
    // The slice-then-stack decode agrees: this layered case is exact for both.
    const auto r = decode(m);
    const auto c = compare(r, s);
    CHECK(c.relative_error <= 1e-7);
    CHECK(c.within_bounds);
}

TEST_CASE("the flow oracle matches the parallel arithmetic law on side-by-side columns") {
    const auto m = box_map(6, 6, 12, 500.0, [](int, int y, int) { return y < 3 ? 100.0 : 300.0; });
    const auto s = resistor_oracle(m);
    CHECK(s.k_eff_mD == Catch::Approx(200.0).epsilon(1e-7));
    CHECK(compare(decode(m), s).within_bounds);
}

TEST_CASE("pressure decreases linearly through a constant box") {
    const int nz = 10;
    const auto m = box_map(3, 3, nz, 1000.0, [](int, int, int) { return 50.0; });
    const auto s = resistor_oracle(m);
    CHECK(s.pressure.nx == 3);
    CHECK(s.pressure.nz == nz);
    for (int z = 0; z < nz; ++z) {
        const double expected = 1.0 - (2.0 * z + 1.0) / (2.0 * nz);
        CHECK(s.pressure.at(1, 1, z) == Catch::Approx(expected).margin(1e-6));
    }
    for (double p : s.pressure.values) {
        CHECK(p >= -1e-9);
        CHECK(p <= 1.0 + 1e-9);
    }
}

TEST_CASE("a sealed midplane defeats percolation without running the solver") {
    const auto m = box_map(4, 4, 6, 1000.0, [](int, int, int z) { return z == 3 ? 0.0 : 10.0; });
    const auto s = resistor_oracle(m);
    CHECK_FALSE(s.percolated);
    CHECK(s.k_eff_mD == 0.0);
    CHECK(s.iterations == 0);
}

TEST_CASE("dead-end spurs do not change the effective permeability") {
    // A conductive box plus a single spur voxel hanging off the side wall of
    // a widened lattice. The spur attaches at exactly one point away from both
    // z faces, so it carries no steady flux and only the cross-section
    // normalization changes.
    const auto base = box_map(3, 3, 6, 1000.0, [](int, int, int) { return 40.0; });
    const auto spurred = box_map(4, 3, 6, 1000.0, [](int x, int y, int z) {
        if (x < 3) return 40.0;
        return (y == 1 && z == 2) ? 40.0 : 0.0;
    });
    const auto a = resistor_oracle(base);
    const auto b = resistor_oracle(spurred);
    // k_eff scales with 1/A; the spurred lattice has 4/3 the cross-section.
    CHECK(b.k_eff_mD == Catch::Approx(a.k_eff_mD * 3.0 / 4.0).epsilon(1e-7));
}

TEST_CASE("the oracle answer lies within the map's global bounds on random fields") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 3; ++trial) {
        const auto m = testsup::random_kmap(6, 6, 10, rng, 1.0, 400.0);
        const auto s = resistor_oracle(m);
        const auto r = decode(m);
        const auto c = compare(r, s);
        CHECK(c.within_bounds);
        CHECK(s.k_eff_mD > 0.0);
    }
}

TEST_CASE("raising a voxel's permeability cannot lower the effective permeability") {
    std::mt19937 rng(53);
    auto m = testsup::random_kmap(5, 5, 8, rng, 1.0, 100.0);
    const double before = resistor_oracle(m, 1e-11).k_eff_mD;
    m.values[m.index(2, 2, 4)] *= 10.0;
    const double after = resistor_oracle(m, 1e-11).k_eff_mD;
    CHECK(after >= before * (1.0 - 1e-9));
}

TEST_CASE("an exhausted iteration budget raises a dedicated error") {
    std::mt19937 rng(59);
    const auto m = testsup::random_kmap(6, 6, 12, rng, 0.1, 5000.0);
    try {
        (void)resistor_oracle(m, 1e-10, 2);
        FAIL("expected NonConvergence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonConvergence);
    }
}

TEST_CASE("comparison conventions for zero permeabilities") {
    DecodeReport r;
    r.k_3d = 0.0;
    r.lower_bound_harmonic = 0.0;
    r.upper_bound_arithmetic = 10.0;
    OracleSolution s;
    s.k_eff_mD = 0.0;
    CHECK(compare(r, s).relative_error == 0.0);
    CHECK(compare(r, s).within_bounds);
    r.k_3d = 5.0;
    CHECK(std::isinf(compare(r, s).relative_error));
    s.k_eff_mD = 4.0;
    CHECK(compare(r, s).relative_error == Catch::Approx(0.25).epsilon(1e-12));
    s.k_eff_mD = 11.0;  // above the arithmetic bound
    CHECK_FALSE(compare(r, s).within_bounds);
}

TEST_CASE("sample layout names round-trip") {
    for (SampleLayout l : all_sample_layouts) CHECK(sample_from_name(std::string(sample_name(l))) == l);
    CHECK_THROWS_AS(sample_from_name("sample-6"), Error);
}
