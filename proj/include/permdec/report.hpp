#pragma once

#include <ctime>
#include <fstream>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "permdec/errors.hpp"
#include "permdec/geometry.hpp"
#include "permdec/micromodel.hpp"
#include "permdec/numeric.hpp"
#include "permdec/pim.hpp"
#include "permdec/version.hpp"

namespace permdec {

inline nlohmann::json json_of_entry(const TableEntry& e) {
    nlohmann::json j;
    j["k_mD"] = e.k_mD;
    if (e.provenance == Provenance::DirectConstant) {
        j["provenance"] = "DirectConstant";
    } else {
        j["provenance"] = "FromCalibration";
        j["mriii_mean"] = e.mriii_mean;
        j["grain_diameter_um"] = e.grain_diameter_um;
        j["config"] = std::string(packing_name(e.config));
        j["extrapolated"] = e.extrapolated;
    }
    return j;
}

inline nlohmann::json json_of_table(const ClassPermeabilityTable& t) {
    nlohmann::json j;
    for (DhzClass c : all_classes)
        if (t.present[class_id(c)]) j[std::string(class_name(c))] = json_of_entry(t.get(c));
    return j;
}

inline nlohmann::json json_of_report(const DecodeReport& r) {
    nlohmann::json j;
    j["slice_k_mD"] = r.slice_k;
    j["k_3d_mD"] = r.k_3d;
    j["lower_bound_harmonic_mD"] = r.lower_bound_harmonic;
    j["upper_bound_arithmetic_mD"] = r.upper_bound_arithmetic;
    j["blocked"] = r.blocked;
    if (r.class_table.complete()) j["class_table"] = json_of_table(r.class_table);
    if (!r.calib_tag.empty()) j["calib_tag"] = r.calib_tag;
    return j;
}

inline nlohmann::json json_of_oracle(const OracleSolution& s) {
    nlohmann::json j;
    j["k_eff_mD"] = s.k_eff_mD;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    j["percolated"] = s.percolated;
    return j;
}

// Non-finite relative errors (oracle blocked, prediction not) serialize as
// null; consumers treat null as "not comparable".
inline nlohmann::json json_of_comparison(const ComparisonRecord& c) {
    nlohmann::json j;
    j["k_3dpim_mD"] = c.k_3dpim;
    j["k_oracle_mD"] = c.k_oracle;
    j["relative_error"] = c.relative_error;
    j["within_bounds"] = c.within_bounds;
    return j;
}

inline nlohmann::json json_of_packing(const PackingGeometry& g) {
    nlohmann::json j;
    j["config"] = std::string(packing_name(g.config));
    j["n_diamond_faces"] = g.n_diamond_faces;
    j["n_triangle_faces"] = g.n_triangle_faces;
    j["total_throat_area_coeff"] = g.total_throat_area_coeff;
    j["n_pore_throats"] = g.n_pore_throats;
    j["n_cv_inlets"] = g.n_cv_inlets;
    j["effective_throat_coeff"] = g.effective_throat_coeff;
    j["recomputed_area_coeff"] = g.recomputed_area_coeff;
    j["area_coeff_discrepancy"] = g.area_coeff_discrepancy;
    if (g.nominal_porosity)
        j["nominal_porosity"] = *g.nominal_porosity;
    else
        j["nominal_porosity"] = nullptr;
    return j;
}

inline nlohmann::json geometry_table_json() {
    nlohmann::json j;
    j["constants"] = {{"concave_diamond_coeff", kConcaveDiamondCoeff},
                      {"concave_triangle_coeff", kConcaveTriangleCoeff},
                      {"throat_to_pore_ratio", throat_to_pore_ratio_2d()},
                      {"rhombohedral_pi_form_coeff", kRhombohedralPiFormCoeff}};
    j["packings"] = nlohmann::json::array();
    for (PackingConfig c : all_packings) j["packings"].push_back(json_of_packing(packing_geometry(c)));
    return j;
}

// CSV layout: `# key=value` lines for the scalar constants, a header, then
// one row per packing configuration. An empty nominal_porosity cell means no
// value is available for that configuration.
inline void write_geometry_table_csv(std::ostream& out) {
    out << "# concave_diamond_coeff=" << format_double(kConcaveDiamondCoeff) << "\n";
    out << "# concave_triangle_coeff=" << format_double(kConcaveTriangleCoeff) << "\n";
    out << "# throat_to_pore_ratio=" << format_double(throat_to_pore_ratio_2d()) << "\n";
    out << "# rhombohedral_pi_form_coeff=" << format_double(kRhombohedralPiFormCoeff) << "\n";
    out << "config,n_diamond_faces,n_triangle_faces,total_throat_area_coeff,n_pore_throats,n_cv_inlets,"
           "effective_throat_coeff,recomputed_area_coeff,area_coeff_discrepancy,nominal_porosity\n";
    for (PackingConfig c : all_packings) {
        const PackingGeometry g = packing_geometry(c);
        out << packing_name(c) << "," << g.n_diamond_faces << "," << g.n_triangle_faces << ","
            << format_double(g.total_throat_area_coeff) << "," << g.n_pore_throats << "," << g.n_cv_inlets << ","
            << format_double(g.effective_throat_coeff) << "," << format_double(g.recomputed_area_coeff) << ","
            << (g.area_coeff_discrepancy ? "true" : "false") << ","
            << (g.nominal_porosity ? format_double(*g.nominal_porosity) : std::string()) << "\n";
    }
}

inline void write_slice_k_csv(std::span<const double> slice_k, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write slice table '" + path + "'");
    out << "z,k_mD\n";
    for (std::size_t z = 0; z < slice_k.size(); ++z) out << z << "," << format_double(slice_k[z]) << "\n";
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Standard report envelope. Everything except "meta" is a pure function of
// the inputs and the resolved config, so reports from identical runs differ
// at most in "meta".
inline nlohmann::json report_envelope(nlohmann::json body, const nlohmann::json& resolved_config) {
    body["config"] = resolved_config;
    body["meta"] = {{"generated_at", utc_timestamp()}, {"tool", "permdec"}, {"version", kVersionString}};
    return body;
}

inline void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write report '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) raise(ErrorCode::IoFailure, "write failed for '" + path + "'");
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoFailure, "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

}  // namespace permdec
