#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "permdec/errors.hpp"

namespace permdec {

enum class PackingConfig { Cubic, Triclinic, Rhombohedral };

inline constexpr std::array<PackingConfig, 3> all_packings{PackingConfig::Cubic, PackingConfig::Triclinic,
                                                           PackingConfig::Rhombohedral};

constexpr std::string_view packing_name(PackingConfig c) {
    switch (c) {
        case PackingConfig::Cubic: return "cubic";
        case PackingConfig::Triclinic: return "triclinic";
        case PackingConfig::Rhombohedral: return "rhombohedral";
    }
    return "?";
}

inline PackingConfig packing_from_name(const std::string& s) {
    for (PackingConfig c : all_packings)
        if (s == packing_name(c)) return c;
    raise(ErrorCode::InvalidArgument, "unknown packing '" + s + "' (cubic|triclinic|rhombohedral)");
}

struct GrainRadius {
    double r_g_um;

    explicit GrainRadius(double r) : r_g_um(r) {
        if (!(r > 0.0)) raise(ErrorCode::InvalidArgument, "grain radius must be > 0");
    }
};

enum class ThroatShape { ConcaveDiamond, ConcaveTriangle };

// Exact analytic throat coefficients. The published 0.858 / 0.162 figures are
// roundings of these.
inline constexpr double kConcaveDiamondCoeff = 4.0 - std::numbers::pi;                 // square minus circle
inline constexpr double kConcaveTriangleCoeff = std::numbers::sqrt3 - std::numbers::pi / 2.0;

// Published pi-form restatement of the rhombohedral effective coefficient
// (0.02731 pi = 0.08580, agreeing with 0.0858 to about 4e-5 relative).
inline constexpr double kRhombohedralPiFormCoeff = 0.02731 * std::numbers::pi;

// Largest pore plane of the four-grain square arrangement: (2 r)^2.
inline double pore_area_2d(GrainRadius r) { return 4.0 * r.r_g_um * r.r_g_um; }

inline double throat_area_2d(ThroatShape shape, GrainRadius r) {
    const double c = shape == ThroatShape::ConcaveDiamond ? kConcaveDiamondCoeff : kConcaveTriangleCoeff;
    return c * r.r_g_um * r.r_g_um;
}

// (4 - pi) / 4; the grain radius cancels.
inline double throat_to_pore_ratio_2d() { return kConcaveDiamondCoeff / 4.0; }

// Per-configuration constant table. total_throat_area_coeff and
// effective_throat_coeff are stored exactly as published; the face inventory
// allows recomputing the total from the 2D throat shapes, and the rhombohedral
// row disagrees with its published figure (the diamond term alone matches), so
// the discrepancy is surfaced as a diagnostic and never silently corrected --
// every downstream permeability stays on the published coefficient chain.
struct PackingGeometry {
    PackingConfig config;
    int n_diamond_faces;
    int n_triangle_faces;
    double total_throat_area_coeff;   // A_*PorT, multiplier of r_g^2
    int n_pore_throats;               // N_PorT
    int n_cv_inlets;                  // N_CVinlets
    double effective_throat_coeff;    // multiplier of r_g^2
    double recomputed_area_coeff;     // face inventory x analytic shape areas
    bool area_coeff_discrepancy;      // |recomputed - stated| / stated > 1e-2
    std::optional<double> nominal_porosity;  // empty: no value available
};

inline PackingGeometry packing_geometry(PackingConfig config) {
    PackingGeometry g{};
    g.config = config;
    g.n_cv_inlets = 2;
    switch (config) {
        case PackingConfig::Cubic:
            g.n_diamond_faces = 6;
            g.n_triangle_faces = 0;
            g.total_throat_area_coeff = 5.148;
            g.n_pore_throats = 6;
            g.effective_throat_coeff = 0.429;
            break;
        case PackingConfig::Triclinic:
            g.n_diamond_faces = 4;
            g.n_triangle_faces = 4;
            g.total_throat_area_coeff = 4.08;
            g.n_pore_throats = 8;
            g.effective_throat_coeff = 0.255;
            break;
        case PackingConfig::Rhombohedral:
            g.n_diamond_faces = 2;
            g.n_triangle_faces = 8;
            g.total_throat_area_coeff = 1.716;
            g.n_pore_throats = 10;
            g.effective_throat_coeff = 0.0858;
            break;
    }
    g.recomputed_area_coeff =
        g.n_diamond_faces * kConcaveDiamondCoeff + g.n_triangle_faces * kConcaveTriangleCoeff;
    g.area_coeff_discrepancy =
        std::abs(g.recomputed_area_coeff - g.total_throat_area_coeff) / g.total_throat_area_coeff > 1e-2;
    if (config == PackingConfig::Rhombohedral) g.nominal_porosity = 0.25;
    if (config == PackingConfig::Cubic) g.nominal_porosity = 1.0 - std::numbers::pi / 6.0;
    return g;
}

inline double effective_throat_coeff(PackingConfig config) {
    return packing_geometry(config).effective_throat_coeff;
}

inline double effective_pore_throat_size_3d(PackingConfig config, GrainRadius r) {
    return effective_throat_coeff(config) * r.r_g_um * r.r_g_um;
}

// Permeability in mD equals the effective 3D pore-throat size in um^2: a
// published empirical convention (value pass-through with a unit relabel),
// not a unit conversion.
inline double permeability_from_grain_radius(PackingConfig config, GrainRadius r) {
    return effective_pore_throat_size_3d(config, r);
}

inline GrainRadius grain_radius_from_permeability(PackingConfig config, double k_mD) {
    if (!(k_mD > 0.0)) raise(ErrorCode::NonPositivePermeability, "permeability must be > 0 to invert");
    return GrainRadius(std::sqrt(k_mD / effective_throat_coeff(config)));
}

// Porosity depends on grain configuration only, never on grain size. The
// rhombohedral value is the published field average; cubic follows from the
// unit cell; triclinic has no published value and is reported unavailable.
inline double nominal_porosity(PackingConfig config) {
    switch (config) {
        case PackingConfig::Rhombohedral: return 0.25;
        case PackingConfig::Cubic: return 1.0 - std::numbers::pi / 6.0;
        case PackingConfig::Triclinic:
            raise(ErrorCode::PorosityNotSpecified, "no nominal porosity available for triclinic packing");
    }
    raise(ErrorCode::InvalidArgument, "bad packing config");
}

}  // namespace permdec
