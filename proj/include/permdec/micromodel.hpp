#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "permdec/errors.hpp"
#include "permdec/geometry.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"
#include "permdec/numeric.hpp"
#include "permdec/pim.hpp"

namespace permdec {

enum class SampleLayout {
    Homogeneous2000,
    Homogeneous4000,
    SerialTwoZone,
    ParallelTwoZone,
    ArbitraryHeterogeneous,
};

inline constexpr std::array<SampleLayout, 5> all_sample_layouts{
    SampleLayout::Homogeneous2000, SampleLayout::Homogeneous4000, SampleLayout::SerialTwoZone,
    SampleLayout::ParallelTwoZone, SampleLayout::ArbitraryHeterogeneous};

constexpr std::string_view sample_name(SampleLayout s) {
    switch (s) {
        case SampleLayout::Homogeneous2000: return "homogeneous-2000";
        case SampleLayout::Homogeneous4000: return "homogeneous-4000";
        case SampleLayout::SerialTwoZone: return "serial-two-zone";
        case SampleLayout::ParallelTwoZone: return "parallel-two-zone";
        case SampleLayout::ArbitraryHeterogeneous: return "arbitrary-heterogeneous";
    }
    return "?";
}

inline SampleLayout sample_from_name(const std::string& s) {
    for (SampleLayout l : all_sample_layouts)
        if (s == sample_name(l)) return l;
    raise(ErrorCode::InvalidArgument, "unknown sample layout '" + s + "'");
}

// Printed-micromodel geometry: a cylinder of two candidate mesh sizes whose
// cells behave as homogeneous effective-permeability blocks.
struct MicromodelSpec {
    SampleLayout sample = SampleLayout::Homogeneous2000;
    double mesh_fine_um = 2000.0;
    double mesh_coarse_um = 4000.0;
    double length_cm = 7.8;
    double diameter_cm = 3.8;
    double voxel_size_um = 1000.0;
    std::uint32_t seed = 0;  // ArbitraryHeterogeneous cell assignment
};

namespace detail {

// Count of voxels covering `total_um` exactly; rejects sizes that do not
// tile the extent.
inline int exact_voxel_count(double total_um, double voxel_um, const std::string& what) {
    const double q = total_um / voxel_um;
    const long long n = std::llround(q);
    if (n < 1 || std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q))
        raise(ErrorCode::InvalidArgument,
              "voxel size " + format_double(voxel_um) + " um does not divide " + what + " (" +
                  format_double(total_um) + " um) evenly");
    if (n > std::numeric_limits<int>::max()) raise(ErrorCode::InvalidArgument, what + ": too many voxels");
    return static_cast<int>(n);
}

}  // namespace detail

struct Micromodel {
    PermeabilityMap kmap;
    LabelGrid labels;
    ClassPermeabilityTable table;
};

// Builds the voxelized cylinder for one validation layout. Voxels outside
// the circular cross-section are Pyrite with k = 0. The two rock types map
// to Intergranular1 (fine mesh) and Intergranular2 (coarse mesh); their
// default permeability comes from the grain-radius law with r = lateral / 2
// under rhombohedral packing, a stand-in for the physically measured values,
// unless a caller-supplied table overrides it.
inline Micromodel generate_micromodel(const MicromodelSpec& spec,
                                      const std::optional<ClassPermeabilityTable>& table_override = {}) {
    if (!(spec.voxel_size_um > 0.0)) raise(ErrorCode::InvalidArgument, "voxel size must be > 0");
    if (!(spec.mesh_fine_um > 0.0) || !(spec.mesh_coarse_um > 0.0))
        raise(ErrorCode::InvalidArgument, "mesh laterals must be > 0");
    if (!(spec.length_cm > 0.0) || !(spec.diameter_cm > 0.0))
        raise(ErrorCode::InvalidArgument, "cylinder dimensions must be > 0");
    const double v = spec.voxel_size_um;
    const double length_um = spec.length_cm * 10000.0;
    const double diameter_um = spec.diameter_cm * 10000.0;
    (void)detail::exact_voxel_count(spec.mesh_fine_um, v, "the fine mesh lateral");
    const int coarse_per_cell = detail::exact_voxel_count(spec.mesh_coarse_um, v, "the coarse mesh lateral");
    const int nxy = detail::exact_voxel_count(diameter_um, v, "the cylinder diameter");
    const int nz = detail::exact_voxel_count(length_um, v, "the cylinder length");

    ClassPermeabilityTable table;
    if (table_override) {
        table = *table_override;
        table.require_complete();
    } else {
        TableEntry zero;
        zero.k_mD = 0.0;
        table.set(DhzClass::Pyrite, zero);
        table.set(DhzClass::OpenVug, zero);
        TableEntry fine;
        fine.k_mD = permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(spec.mesh_fine_um / 2.0));
        table.set(DhzClass::Intergranular1, fine);
        TableEntry coarse;
        coarse.k_mD =
            permeability_from_grain_radius(PackingConfig::Rhombohedral, GrainRadius(spec.mesh_coarse_um / 2.0));
        table.set(DhzClass::Intergranular2, coarse);
    }

    // One class draw per coarse-mesh cell over the full bounding lattice,
    // x-fastest, so the layout depends only on the seed.
    std::vector<std::uint8_t> cell_class;
    int ncx = 0, ncy = 0, ncz = 0;
    if (spec.sample == SampleLayout::ArbitraryHeterogeneous) {
        ncx = (nxy + coarse_per_cell - 1) / coarse_per_cell;
        ncy = ncx;
        ncz = (nz + coarse_per_cell - 1) / coarse_per_cell;
        cell_class.resize(static_cast<std::size_t>(ncx) * ncy * ncz);
        std::mt19937 rng(spec.seed);
        for (auto& c : cell_class)
            c = (rng() & 1u) ? class_id(DhzClass::Intergranular2) : class_id(DhzClass::Intergranular1);
    }

    LabelGrid labels = LabelGrid::filled(nxy, nxy, nz, v, DhzClass::Pyrite);
    const double radius = diameter_um / 2.0;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < nxy; ++y)
            for (int x = 0; x < nxy; ++x) {
                const double dx = (x + 0.5) * v - radius;
                const double dy = (y + 0.5) * v - radius;
                if (dx * dx + dy * dy > radius * radius) continue;  // outside: stays Pyrite
                DhzClass c = DhzClass::Intergranular1;
                switch (spec.sample) {
                    case SampleLayout::Homogeneous2000: c = DhzClass::Intergranular1; break;
                    case SampleLayout::Homogeneous4000: c = DhzClass::Intergranular2; break;
                    case SampleLayout::SerialTwoZone:
                        c = z < nz / 2 ? DhzClass::Intergranular1 : DhzClass::Intergranular2;
                        break;
                    case SampleLayout::ParallelTwoZone:
                        c = y < nxy / 2 ? DhzClass::Intergranular1 : DhzClass::Intergranular2;
                        break;
                    case SampleLayout::ArbitraryHeterogeneous: {
                        const std::size_t ci = static_cast<std::size_t>(x / coarse_per_cell) +
                                               static_cast<std::size_t>(ncx) *
                                                   (static_cast<std::size_t>(y / coarse_per_cell) +
                                                    static_cast<std::size_t>(ncy) *
                                                        static_cast<std::size_t>(z / coarse_per_cell));
                        c = class_from_id(cell_class[ci]);
                        break;
                    }
                }
                labels.set(x, y, z, c);
            }

    Micromodel m;
    m.labels = std::move(labels);
    m.table = table;
    m.kmap = assign_permeability(m.labels, m.table);
    return m;
}

struct OracleSolution {
    double k_eff_mD = 0.0;
    int iterations = 0;
    double residual = 0.0;  // relative residual at exit
    bool percolated = true; // false: no conductive path between the z faces
    VoxelGrid pressure;     // diagnostic, 1 at inlet to 0 at outlet, 0 off the flow skeleton
};

namespace detail {

// Conductive voxels reachable by 6-connectivity from conductive voxels of
// the given z face.
inline std::vector<std::uint8_t> reach_from_face(const PermeabilityMap& m, int z_face) {
    const std::size_t n = m.values.size();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack;
    const std::size_t plane = static_cast<std::size_t>(m.nx) * static_cast<std::size_t>(m.ny);
    for (std::size_t i = 0; i < plane; ++i) {
        const std::size_t idx = i + plane * static_cast<std::size_t>(z_face);
        if (m.values[idx] > 0.0) {
            seen[idx] = 1;
            stack.push_back(idx);
        }
    }
    while (!stack.empty()) {
        const std::size_t idx = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(idx % m.nx);
        const int y = static_cast<int>((idx / m.nx) % m.ny);
        const int z = static_cast<int>(idx / plane);
        const std::array<std::array<int, 3>, 6> nbrs{{{x - 1, y, z},
                                                      {x + 1, y, z},
                                                      {x, y - 1, z},
                                                      {x, y + 1, z},
                                                      {x, y, z - 1},
                                                      {x, y, z + 1}}};
        for (const auto& q : nbrs) {
            if (q[0] < 0 || q[1] < 0 || q[2] < 0 || q[0] >= m.nx || q[1] >= m.ny || q[2] >= m.nz) continue;
            const std::size_t j = m.index(q[0], q[1], q[2]);
            if (!seen[j] && m.values[j] > 0.0) {
                seen[j] = 1;
                stack.push_back(j);
            }
        }
    }
    return seen;
}

}  // namespace detail

// Finite-volume ground truth for the z-axis effective permeability: unit
// pressure drop between the z faces, no-flow lateral walls, face conductance
// from the harmonic mean of neighbor permeabilities. Dead-end clusters carry
// no steady flux, so unknowns are restricted to voxels connected to both
// faces; the reduced system is symmetric positive definite and solved by
// Jacobi-preconditioned conjugate gradients with fixed-order reductions,
// giving bit-identical trajectories across thread counts.
inline OracleSolution resistor_oracle(const PermeabilityMap& kmap, double tol = 1e-8, long long max_iter = 0) {
    validate_permeability_map(kmap);
    if (!(tol > 0.0)) raise(ErrorCode::InvalidArgument, "tolerance must be > 0");
    const std::size_t n_total = kmap.values.size();
    if (max_iter <= 0)
        max_iter = static_cast<long long>(2000.0 * std::cbrt(static_cast<double>(n_total))) + 100;

    OracleSolution sol;
    sol.pressure = VoxelGrid::filled(kmap.nx, kmap.ny, kmap.nz, kmap.voxel_size_um, ValueKind::Intensity, 0.0);

    const auto from_in = detail::reach_from_face(kmap, 0);
    const auto from_out = detail::reach_from_face(kmap, kmap.nz - 1);
    std::vector<std::int64_t> dof(n_total, -1);
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < n_total; ++i)
        if (from_in[i] && from_out[i]) {
            dof[i] = static_cast<std::int64_t>(cells.size());
            cells.push_back(i);
        }
    if (cells.empty()) {
        sol.percolated = false;
        sol.k_eff_mD = 0.0;
        return sol;
    }

    const double h = kmap.voxel_size_um;
    const std::size_t nd = cells.size();
    const std::size_t plane = static_cast<std::size_t>(kmap.nx) * static_cast<std::size_t>(kmap.ny);
    // Fixed-width adjacency: 6 (neighbor dof, conductance) slots per cell.
    std::vector<std::int64_t> nbr(nd * 6, -1);
    std::vector<double> cond(nd * 6, 0.0);
    std::vector<double> diag(nd, 0.0);
    std::vector<double> rhs(nd, 0.0);
    std::vector<double> g_inlet(nd, 0.0);
    for (std::size_t r = 0; r < nd; ++r) {
        const std::size_t idx = cells[r];
        const int x = static_cast<int>(idx % kmap.nx);
        const int y = static_cast<int>((idx / kmap.nx) % kmap.ny);
        const int z = static_cast<int>(idx / plane);
        const double ki = kmap.values[idx];
        const std::array<std::array<int, 3>, 6> nbrs{{{x - 1, y, z},
                                                      {x + 1, y, z},
                                                      {x, y - 1, z},
                                                      {x, y + 1, z},
                                                      {x, y, z - 1},
                                                      {x, y, z + 1}}};
        for (std::size_t s = 0; s < 6; ++s) {
            const auto& q = nbrs[s];
            if (q[0] < 0 || q[1] < 0 || q[0] >= kmap.nx || q[1] >= kmap.ny) continue;  // no-flow wall
            if (q[2] < 0) {  // inlet face, p = 1
                const double g = 2.0 * ki * h;
                diag[r] += g;
                rhs[r] += g;
                g_inlet[r] = g;
                continue;
            }
            if (q[2] >= kmap.nz) {  // outlet face, p = 0
                const double g = 2.0 * ki * h;
                diag[r] += g;
                continue;
            }
            const std::size_t j = kmap.index(q[0], q[1], q[2]);
            if (dof[j] < 0) continue;  // blocked or dead-end neighbor: no flux
            const double kj = kmap.values[j];
            const double g = 2.0 * ki * kj / (ki + kj) * h;
            nbr[r * 6 + s] = dof[j];
            cond[r * 6 + s] = g;
            diag[r] += g;
        }
    }

    auto matvec = [&](const std::vector<double>& p, std::vector<double>& out) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long rr = 0; rr < static_cast<long long>(nd); ++rr) {
            const std::size_t r = static_cast<std::size_t>(rr);
            double acc = diag[r] * p[r];
            for (std::size_t s = 0; s < 6; ++s)
                if (nbr[r * 6 + s] >= 0) acc -= cond[r * 6 + s] * p[static_cast<std::size_t>(nbr[r * 6 + s])];
            out[r] = acc;
        }
    };

    std::vector<double> x(nd, 0.0), rvec = rhs, zvec(nd), pvec(nd), qvec(nd);
    const double bnorm = std::sqrt(pairwise_dot(rhs, rhs));
    for (std::size_t i = 0; i < nd; ++i) zvec[i] = rvec[i] / diag[i];
    pvec = zvec;
    double rz = pairwise_dot(rvec, zvec);
    bool converged = false;
    double rel = std::sqrt(pairwise_dot(rvec, rvec)) / bnorm;
    if (rel <= tol) converged = true;  // degenerate: zero right-hand side cannot happen, b has inlet terms
    long long it = 0;
    while (!converged && it < max_iter) {
        ++it;
        matvec(pvec, qvec);
        const double pq = pairwise_dot(pvec, qvec);
        const double alpha = rz / pq;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(nd); ++i) {
            x[static_cast<std::size_t>(i)] += alpha * pvec[static_cast<std::size_t>(i)];
            rvec[static_cast<std::size_t>(i)] -= alpha * qvec[static_cast<std::size_t>(i)];
        }
        rel = std::sqrt(pairwise_dot(rvec, rvec)) / bnorm;
        if (rel <= tol) {
            converged = true;
            break;
        }
        for (std::size_t i = 0; i < nd; ++i) zvec[i] = rvec[i] / diag[i];
        const double rz_new = pairwise_dot(rvec, zvec);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < nd; ++i) pvec[i] = zvec[i] + beta * pvec[i];
    }
    if (!converged)
        raise(ErrorCode::NonConvergence, "conjugate gradients did not reach tol " + format_double(tol) + " in " +
                                             std::to_string(max_iter) + " iterations (residual " +
                                             format_double(rel) + ")");

    sol.iterations = static_cast<int>(it);
    sol.residual = rel;
    // Influx through the inlet face; discrete conservation makes the outlet
    // flux equal within the solver residual.
    double flux = 0.0;
    for (std::size_t r = 0; r < nd; ++r)
        if (g_inlet[r] > 0.0) flux += g_inlet[r] * (1.0 - x[r]);
    const double length = static_cast<double>(kmap.nz) * h;
    const double area = static_cast<double>(kmap.nx) * static_cast<double>(kmap.ny) * h * h;
    sol.k_eff_mD = flux * length / area;
    for (std::size_t r = 0; r < nd; ++r) sol.pressure.values[cells[r]] = x[r];
    return sol;
}

struct ComparisonRecord {
    double k_3dpim = 0.0;
    double k_oracle = 0.0;
    double relative_error = 0.0;  // |k_3dpim - k_oracle| / k_oracle
    bool within_bounds = false;   // oracle value inside [harmonic, arithmetic]
};

inline ComparisonRecord compare(const DecodeReport& predicted, const OracleSolution& oracle) {
    ComparisonRecord c;
    c.k_3dpim = predicted.k_3d;
    c.k_oracle = oracle.k_eff_mD;
    if (oracle.k_eff_mD > 0.0)
        c.relative_error = std::abs(predicted.k_3d - oracle.k_eff_mD) / oracle.k_eff_mD;
    else
        c.relative_error = predicted.k_3d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    const double slack = 1e-9;
    c.within_bounds = oracle.k_eff_mD >= predicted.lower_bound_harmonic * (1.0 - slack) &&
                      oracle.k_eff_mD <= predicted.upper_bound_arithmetic * (1.0 + slack);
    return c;
}

}  // namespace permdec
