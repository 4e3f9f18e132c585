#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "permdec/detail/io.hpp"
#include "permdec/errors.hpp"

namespace permdec {

// The four differentiating heterogeneity zones. Ids are stable and double as
// tie-break order in the classifier.
enum class DhzClass : std::uint8_t {
    Pyrite = 0,
    OpenVug = 1,
    Intergranular1 = 2,
    Intergranular2 = 3,
};

inline constexpr int kNumClasses = 4;

inline constexpr std::array<DhzClass, kNumClasses> all_classes{
    DhzClass::Pyrite, DhzClass::OpenVug, DhzClass::Intergranular1, DhzClass::Intergranular2};

constexpr std::string_view class_name(DhzClass c) {
    switch (c) {
        case DhzClass::Pyrite: return "pyrite";
        case DhzClass::OpenVug: return "open_vug";
        case DhzClass::Intergranular1: return "intergranular_1";
        case DhzClass::Intergranular2: return "intergranular_2";
    }
    return "?";
}

inline DhzClass class_from_name(const std::string& s) {
    for (DhzClass c : all_classes)
        if (s == class_name(c)) return c;
    raise(ErrorCode::InvalidArgument, "unknown DHZ class '" + s + "'");
}

constexpr std::uint8_t class_id(DhzClass c) { return static_cast<std::uint8_t>(c); }

inline DhzClass class_from_id(int id) {
    if (id < 0 || id >= kNumClasses)
        raise(ErrorCode::InvalidArgument, "DHZ class id out of range: " + std::to_string(id));
    return static_cast<DhzClass>(id);
}

// Per-voxel class labels over a grid. Carries the voxel size so the label
// volume can round-trip through the raw+sidecar format on its own.
struct LabelGrid {
    int nx = 0, ny = 0, nz = 0;
    double voxel_size_um = 0.0;
    std::vector<std::uint8_t> labels;

    std::size_t size() const { return labels.size(); }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * z);
    }

    DhzClass at(int x, int y, int z) const { return static_cast<DhzClass>(labels[index(x, y, z)]); }
    void set(int x, int y, int z, DhzClass c) { labels[index(x, y, z)] = static_cast<std::uint8_t>(c); }

    void validate() const {
        if (nx < 1 || ny < 1 || nz < 1) raise(ErrorCode::InvalidArgument, "LabelGrid dims must be >= 1");
        if (!(voxel_size_um > 0.0)) raise(ErrorCode::InvalidArgument, "LabelGrid voxel_size_um must be > 0");
        const std::size_t n =
            static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
        if (labels.size() != n) raise(ErrorCode::SizeMismatch, "LabelGrid label count does not match dims");
        for (std::uint8_t v : labels)
            if (v >= kNumClasses) raise(ErrorCode::InvalidArgument, "LabelGrid holds an out-of-range class id");
    }

    static LabelGrid filled(int nx, int ny, int nz, double voxel_size_um, DhzClass c) {
        LabelGrid g;
        g.nx = nx;
        g.ny = ny;
        g.nz = nz;
        g.voxel_size_um = voxel_size_um;
        g.labels.assign(static_cast<std::size_t>(nx) * ny * nz, static_cast<std::uint8_t>(c));
        g.validate();
        return g;
    }
};

inline void save_labels(const LabelGrid& g, const std::filesystem::path& path) {
    g.validate();
    std::vector<double> widened(g.labels.begin(), g.labels.end());
    detail::write_raw(path, widened, detail::Dtype::U8);
    detail::write_sidecar(path, {g.nx, g.ny, g.nz, g.voxel_size_um, detail::Dtype::U8, "labels"});
}

inline LabelGrid load_labels(const std::filesystem::path& path) {
    const auto s = detail::read_sidecar(path);
    if (s.value_kind != "labels")
        raise(ErrorCode::InvalidArgument, path.string() + ": value_kind is '" + s.value_kind + "', expected 'labels'");
    const auto values = detail::read_raw(path, s);
    LabelGrid g;
    g.nx = s.nx;
    g.ny = s.ny;
    g.nz = s.nz;
    g.voxel_size_um = s.voxel_size_um;
    g.labels.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) g.labels[i] = static_cast<std::uint8_t>(values[i]);
    g.validate();
    return g;
}

// Volume fraction per class; a full partition, so the fractions sum to one.
inline std::array<double, kNumClasses> class_fractions(const LabelGrid& g) {
    g.validate();
    std::array<std::size_t, kNumClasses> counts{};
    for (std::uint8_t v : g.labels) ++counts[v];
    std::array<double, kNumClasses> f{};
    for (int c = 0; c < kNumClasses; ++c)
        f[c] = static_cast<double>(counts[c]) / static_cast<double>(g.labels.size());
    return f;
}

}  // namespace permdec
