#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permdec/calib.hpp"
#include "permdec/errors.hpp"
#include "permdec/geometry.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"
#include "permdec/numeric.hpp"

namespace permdec {

// A permeability map is a voxel grid whose values are mD, one constant
// region per CMV. The alias keeps every grid operation available.
using PermeabilityMap = VoxelGrid;

inline void validate_permeability_map(const PermeabilityMap& m) {
    m.validate();
    if (m.value_kind != ValueKind::PermeabilityMilliDarcy)
        raise(ErrorCode::InvalidArgument, "expected a permeability map, got value_kind '" +
                                              std::string(value_kind_name(m.value_kind)) + "'");
    for (double v : m.values)
        if (!(v >= 0.0)) raise(ErrorCode::InvalidArgument, "permeability values must be >= 0");
}

enum class Provenance { DirectConstant, FromCalibration };

struct TableEntry {
    double k_mD = 0.0;
    Provenance provenance = Provenance::DirectConstant;
    // Meaningful only for FromCalibration.
    double mriii_mean = 0.0;
    double grain_diameter_um = 0.0;
    PackingConfig config = PackingConfig::Rhombohedral;
    bool extrapolated = false;
};

// Permeability per DHZ class. Complete means every class has an entry.
struct ClassPermeabilityTable {
    std::array<TableEntry, kNumClasses> entries{};
    std::array<bool, kNumClasses> present{};

    void set(DhzClass c, TableEntry e) {
        if (!(e.k_mD >= 0.0) || !std::isfinite(e.k_mD))
            raise(ErrorCode::InvalidArgument, "class permeability must be finite and >= 0");
        entries[class_id(c)] = e;
        present[class_id(c)] = true;
    }

    const TableEntry& get(DhzClass c) const {
        if (!present[class_id(c)])
            raise(ErrorCode::IncompleteTable, "no permeability for class " + std::string(class_name(c)));
        return entries[class_id(c)];
    }

    bool complete() const {
        for (bool p : present)
            if (!p) return false;
        return true;
    }

    void require_complete() const {
        for (DhzClass c : all_classes) (void)get(c);
    }
};

inline ClassPermeabilityTable table_from_calibration(const std::map<DhzClass, double>& per_class_mriii,
                                                     const Calibration& model, PackingConfig config,
                                                     const std::map<DhzClass, double>& overrides = {}) {
    ClassPermeabilityTable t;
    for (DhzClass c : all_classes) {
        TableEntry e;
        if (auto it = overrides.find(c); it != overrides.end()) {
            e.k_mD = it->second;
            e.provenance = Provenance::DirectConstant;
        } else {
            auto mit = per_class_mriii.find(c);
            if (mit == per_class_mriii.end())
                raise(ErrorCode::IncompleteTable,
                      "class " + std::string(class_name(c)) + " has neither a mean intensity nor an override");
            const Calibration::Result r = model(mit->second);
            e.provenance = Provenance::FromCalibration;
            e.mriii_mean = mit->second;
            e.grain_diameter_um = r.grain_diameter_um;
            e.config = config;
            e.extrapolated = r.extrapolated;
            e.k_mD = permeability_from_grain_radius(config, GrainRadius(r.grain_diameter_um / 2.0));
        }
        t.set(c, e);
    }
    return t;
}

inline PermeabilityMap assign_permeability(const LabelGrid& labels, const ClassPermeabilityTable& table) {
    labels.validate();
    table.require_complete();
    std::array<double, kNumClasses> k{};
    for (DhzClass c : all_classes) k[class_id(c)] = table.get(c).k_mD;
    PermeabilityMap m;
    m.nx = labels.nx;
    m.ny = labels.ny;
    m.nz = labels.nz;
    m.voxel_size_um = labels.voxel_size_um;
    m.value_kind = ValueKind::PermeabilityMilliDarcy;
    m.values.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) m.values[i] = k[labels.labels[i]];
    return m;
}

// Parallel-flow layer combination: with uniform voxel cross-sections the
// area-weighted mean over a slice reduces to the plain mean.
inline double parallel_aggregate_slice(const PermeabilityMap& kmap, int z) {
    if (z < 0 || z >= kmap.nz) raise(ErrorCode::OutOfRange, "slice index out of range");
    return mean_of(kmap.slice(z));
}

struct SerialResult {
    double k_mD = 0.0;
    bool blocked = false;  // some layer has k == 0
};

// Serial-flow stack combination: length-weighted harmonic mean. Uniform
// thickness cancels, leaving the plain harmonic mean; a zero layer blocks
// the whole stack.
inline SerialResult serial_aggregate_stack(std::span<const double> slice_k, double slice_thickness) {
    if (slice_k.empty()) raise(ErrorCode::EmptySelection, "no slices to aggregate");
    if (!(slice_thickness > 0.0)) raise(ErrorCode::InvalidArgument, "slice thickness must be > 0");
    for (double k : slice_k) {
        if (!std::isfinite(k)) raise(ErrorCode::NonFiniteValue, "slice permeability is not finite");
        if (k < 0.0) raise(ErrorCode::InvalidArgument, "slice permeability must be >= 0");
    }
    SerialResult r;
    for (double k : slice_k)
        if (k == 0.0) r.blocked = true;
    r.k_mD = r.blocked ? 0.0 : harmonic_mean_of(slice_k);
    return r;
}

// Global voxel-mean bounds: harmonic (0 when any voxel is 0) and arithmetic.
// Any series/parallel composition of the same voxels lies between them.
inline std::pair<double, double> wiener_bounds(const PermeabilityMap& kmap) {
    validate_permeability_map(kmap);
    return {harmonic_mean_of(kmap.values), mean_of(kmap.values)};
}

struct DecodeReport {
    std::vector<double> slice_k;       // parallel-aggregated k per z slice, mD
    double k_3d = 0.0;                 // serial aggregation of slice_k, mD
    double lower_bound_harmonic = 0.0; // global harmonic voxel mean, mD
    double upper_bound_arithmetic = 0.0;
    bool blocked = false;              // some slice aggregates to 0
    ClassPermeabilityTable class_table;  // filled by the pipeline when available
    std::string calib_tag;               // likewise
};

// Slice-parallel then stack-serial aggregation along +z. Callers rotate the
// volume to probe other axes.
inline DecodeReport decode(const PermeabilityMap& kmap) {
    validate_permeability_map(kmap);
    DecodeReport r;
    r.slice_k.resize(static_cast<std::size_t>(kmap.nz));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int z = 0; z < kmap.nz; ++z) r.slice_k[static_cast<std::size_t>(z)] = parallel_aggregate_slice(kmap, z);
    const SerialResult s = serial_aggregate_stack(r.slice_k, kmap.voxel_size_um);
    r.k_3d = s.k_mD;
    r.blocked = s.blocked;
    const auto [lo, hi] = wiener_bounds(kmap);
    r.lower_bound_harmonic = lo;
    r.upper_bound_arithmetic = hi;
    return r;
}

// Diagnostic variant with the composition order reversed: harmonic along
// each z column first, then the mean over columns. Not part of the decode
// contract; useful as a lower-side cross-check on the same map.
inline double columns_first_aggregate(const PermeabilityMap& kmap) {
    validate_permeability_map(kmap);
    const std::size_t n_cols = static_cast<std::size_t>(kmap.nx) * static_cast<std::size_t>(kmap.ny);
    std::vector<double> col_k(n_cols);
    std::vector<double> column(static_cast<std::size_t>(kmap.nz));
    for (std::size_t c = 0; c < n_cols; ++c) {
        for (int z = 0; z < kmap.nz; ++z)
            column[static_cast<std::size_t>(z)] = kmap.values[c + n_cols * static_cast<std::size_t>(z)];
        col_k[c] = harmonic_mean_of(column);
    }
    return mean_of(col_k);
}

inline std::string provenance_string(const TableEntry& e) {
    if (e.provenance == Provenance::DirectConstant) return "DirectConstant";
    std::string s = "FromCalibration mriii=" + format_double(e.mriii_mean) +
                    " d_um=" + format_double(e.grain_diameter_um) + " config=" +
                    std::string(packing_name(e.config));
    if (e.extrapolated) s += " extrapolated=1";
    return s;
}

inline void save_class_table_csv(const ClassPermeabilityTable& t, const std::string& path) {
    t.require_complete();
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write class table '" + path + "'");
    out << "class_name,k_mD,provenance\n";
    for (DhzClass c : all_classes) {
        const TableEntry& e = t.get(c);
        out << class_name(c) << "," << format_double(e.k_mD) << "," << provenance_string(e) << "\n";
    }
}

}  // namespace permdec
