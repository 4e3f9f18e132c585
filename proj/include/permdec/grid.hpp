#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permdec/detail/io.hpp"
#include "permdec/errors.hpp"
#include "permdec/labels.hpp"
#include "permdec/numeric.hpp"

namespace permdec {

enum class ValueKind { Intensity, PermeabilityMilliDarcy };

inline std::string value_kind_name(ValueKind k) {
    return k == ValueKind::Intensity ? "intensity" : "permeability_mD";
}

inline ValueKind value_kind_from_name(const std::string& s) {
    if (s == "intensity") return ValueKind::Intensity;
    if (s == "permeability_mD") return ValueKind::PermeabilityMilliDarcy;
    raise(ErrorCode::InvalidArgument, "unknown value_kind '" + s + "'");
}

// Dense scalar volume, x-fastest then y then z, so a z-slice is contiguous.
// Values are doubles internally regardless of the on-disk dtype.
struct VoxelGrid {
    int nx = 0, ny = 0, nz = 0;
    double voxel_size_um = 0.0;
    ValueKind value_kind = ValueKind::Intensity;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * z);
    }

    double at(int x, int y, int z) const { return values[index(x, y, z)]; }
    double& at(int x, int y, int z) { return values[index(x, y, z)]; }

    std::span<const double> slice(int z) const {
        const std::size_t area = static_cast<std::size_t>(nx) * ny;
        return std::span<const double>(values).subspan(area * static_cast<std::size_t>(z), area);
    }

    void validate() const {
        if (nx < 1 || ny < 1 || nz < 1) raise(ErrorCode::InvalidArgument, "VoxelGrid dims must be >= 1");
        if (!(voxel_size_um > 0.0)) raise(ErrorCode::InvalidArgument, "VoxelGrid voxel_size_um must be > 0");
        const std::size_t n =
            static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
        if (values.size() != n) raise(ErrorCode::SizeMismatch, "VoxelGrid value count does not match dims");
        for (double v : values)
            if (!std::isfinite(v)) raise(ErrorCode::NonFiniteValue, "VoxelGrid holds a non-finite value");
    }

    static VoxelGrid filled(int nx, int ny, int nz, double voxel_size_um, ValueKind kind, double value) {
        VoxelGrid g;
        g.nx = nx;
        g.ny = ny;
        g.nz = nz;
        g.voxel_size_um = voxel_size_um;
        g.value_kind = kind;
        g.values.assign(static_cast<std::size_t>(nx) * ny * nz, value);
        g.validate();
        return g;
    }
};

inline void require_same_dims(const VoxelGrid& g, const LabelGrid& l) {
    if (g.nx != l.nx || g.ny != l.ny || g.nz != l.nz)
        raise(ErrorCode::DimensionMismatch, "label grid dims do not match voxel grid dims");
}

inline VoxelGrid load_grid(const std::filesystem::path& path) {
    const auto s = detail::read_sidecar(path);
    if (s.value_kind == "labels")
        raise(ErrorCode::InvalidArgument, path.string() + ": holds labels, use load_labels");
    VoxelGrid g;
    g.nx = s.nx;
    g.ny = s.ny;
    g.nz = s.nz;
    g.voxel_size_um = s.voxel_size_um;
    g.value_kind = value_kind_from_name(s.value_kind);
    g.values = detail::read_raw(path, s);
    g.validate();
    return g;
}

inline void save_grid(const VoxelGrid& g, const std::filesystem::path& path,
                      detail::Dtype dtype = detail::Dtype::F64) {
    g.validate();
    detail::write_raw(path, g.values, dtype);
    detail::write_sidecar(path, {g.nx, g.ny, g.nz, g.voxel_size_um, dtype, value_kind_name(g.value_kind)});
}

struct Histogram {
    std::vector<double> bin_edges;  // n_bins + 1, increasing
    std::vector<std::uint64_t> counts;
    double mean = 0.0;

    std::uint64_t total() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
};

namespace detail {

inline Histogram histogram_of(std::span<const double> selected, int n_bins) {
    if (n_bins < 1) raise(ErrorCode::InvalidArgument, "n_bins must be >= 1");
    if (selected.empty()) raise(ErrorCode::EmptySelection, "histogram over empty selection");

    double lo = selected.front(), hi = selected.front();
    for (double v : selected) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) {
        // Degenerate range: widen by one unit so the edges stay distinct.
        lo -= 0.5;
        hi += 0.5;
    }

    Histogram h;
    h.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int i = 0; i <= n_bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * (static_cast<double>(i) / n_bins);
    h.bin_edges.front() = lo;
    h.bin_edges.back() = hi;

    h.counts.assign(static_cast<std::size_t>(n_bins), 0);
    const double width = hi - lo;
    for (double v : selected) {
        int b = static_cast<int>((v - lo) / width * n_bins);
        b = std::clamp(b, 0, n_bins - 1);  // hi itself lands in the last bin
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.mean = mean_of(selected);
    return h;
}

}  // namespace detail

inline Histogram histogram(const VoxelGrid& g, int n_bins) {
    g.validate();
    return detail::histogram_of(g.values, n_bins);
}

inline Histogram histogram(const VoxelGrid& g, int n_bins, const LabelGrid& mask, DhzClass cls) {
    g.validate();
    require_same_dims(g, mask);
    std::vector<double> selected;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (mask.labels[i] == static_cast<std::uint8_t>(cls)) selected.push_back(g.values[i]);
    if (selected.empty())
        raise(ErrorCode::EmptySelection, std::string("no voxels labeled ") + std::string(class_name(cls)));
    return detail::histogram_of(selected, n_bins);
}

// Mean intensity of the voxels carrying one label; same selection semantics as
// the masked histogram, without binning.
inline double masked_mean(const VoxelGrid& g, const LabelGrid& mask, DhzClass cls) {
    g.validate();
    require_same_dims(g, mask);
    std::vector<double> selected;
    for (std::size_t i = 0; i < g.values.size(); ++i)
        if (mask.labels[i] == static_cast<std::uint8_t>(cls)) selected.push_back(g.values[i]);
    if (selected.empty())
        raise(ErrorCode::EmptySelection, std::string("no voxels labeled ") + std::string(class_name(cls)));
    return mean_of(selected);
}

inline void write_histogram_csv(const Histogram& h, std::ostream& out) {
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        out << format_double(h.bin_edges[i]) << ',' << format_double(h.bin_edges[i + 1]) << ',' << h.counts[i]
            << '\n';
    out << "# mean=" << format_double(h.mean) << '\n';
}

inline void write_histogram_csv(const Histogram& h, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
    write_histogram_csv(h, out);
    if (!out) raise(ErrorCode::IoFailure, "failed writing " + path.string());
}

enum class Axis { X, Y, Z };

inline Axis axis_from_name(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    raise(ErrorCode::InvalidArgument, "flow axis must be x, y or z");
}

// Cyclic rotation bringing the requested axis onto +z, so downstream decode
// can always integrate slices along z.
inline VoxelGrid rotate_axis_to_z(const VoxelGrid& g, Axis axis) {
    g.validate();
    if (axis == Axis::Z) return g;

    VoxelGrid r;
    r.voxel_size_um = g.voxel_size_um;
    r.value_kind = g.value_kind;
    if (axis == Axis::X) {
        r.nx = g.ny;
        r.ny = g.nz;
        r.nz = g.nx;
    } else {
        r.nx = g.nz;
        r.ny = g.nx;
        r.nz = g.ny;
    }
    r.values.resize(g.values.size());
    for (int z = 0; z < r.nz; ++z)
        for (int y = 0; y < r.ny; ++y)
            for (int x = 0; x < r.nx; ++x) {
                if (axis == Axis::X)
                    r.values[r.index(x, y, z)] = g.at(z, x, y);
                else
                    r.values[r.index(x, y, z)] = g.at(y, z, x);
            }
    return r;
}

}  // namespace permdec
