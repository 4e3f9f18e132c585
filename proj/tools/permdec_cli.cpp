// permdec: permeability decoding for 3D intensity volumes.
//
// Subcommands cover the full pipeline: packing-geometry constants, synthetic
// micromodel generation, supervised segmentation, intensity calibration,
// decode (segmentation + calibration + slice/stack aggregation), the
// resistor-network flow oracle, the five-sample validation suite, and volume
// statistics reports.
//
// Exit codes: 0 success, 2 input or validation error, 3 solver
// non-convergence, 4 validation suite completed with per-sample failures.

#include <cstdint>
#include <fstream>
#include <functional>
#include <set>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permdec/permdec.hpp"

namespace {

using nlohmann::json;

// Required-path validation runs after the config file is applied, so a
// config can satisfy a required option.
void require_set(const std::string& value, const std::string& flag) {
    if (value.empty())
        permdec::raise(permdec::ErrorCode::InvalidArgument, "missing required option " + flag);
}

// Binds options so that values resolve as defaults < config file < flags,
// and the fully resolved set can be echoed into reports.
class ConfigBinder {
  public:
    explicit ConfigBinder(CLI::App* app) : app_(app) {
        app_->add_option("--config", config_path_, "JSON config file; flags override its values");
    }

    template <class T>
    CLI::Option* option(const std::string& flag_spec, const std::string& key, T& var, const std::string& desc) {
        CLI::Option* o = app_->add_option(flag_spec, var, desc);
        keys_.insert(key);
        appliers_.push_back([o, &var, key](const json& cfg) {
            if (o->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
        });
        echoers_.push_back([&var, key](json& echo) { echo[key] = var; });
        return o;
    }

    CLI::Option* flag(const std::string& flag_spec, const std::string& key, bool& var, const std::string& desc) {
        CLI::Option* o = app_->add_flag(flag_spec, var, desc);
        keys_.insert(key);
        appliers_.push_back([o, &var, key](const json& cfg) {
            if (o->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<bool>();
        });
        echoers_.push_back([&var, key](json& echo) { echo[key] = var; });
        return o;
    }

    void apply_config() {
        if (config_path_.empty()) return;
        const json cfg = permdec::read_json_file(config_path_);
        if (!cfg.is_object()) permdec::raise(permdec::ErrorCode::InvalidArgument, "config file must hold a JSON object");
        for (const auto& [key, value] : cfg.items())
            if (!keys_.count(key))
                permdec::raise(permdec::ErrorCode::InvalidArgument,
                               "config key '" + key + "' is not an option of this subcommand");
        for (const auto& f : appliers_) f(cfg);
    }

    json resolved() const {
        json echo = json::object();
        for (const auto& f : echoers_) f(echo);
        return echo;
    }

  private:
    CLI::App* app_;
    std::string config_path_;
    std::set<std::string> keys_;
    std::vector<std::function<void(const json&)>> appliers_;
    std::vector<std::function<void(json&)>> echoers_;
};

struct GeometryCmd {
    std::string out;
    std::string json_out;

    int run(const ConfigBinder& b) const {
        if (!json_out.empty())
            permdec::write_json_file(permdec::report_envelope(permdec::geometry_table_json(), b.resolved()),
                                     json_out);
        if (out.empty()) {
            permdec::write_geometry_table_csv(std::cout);
        } else {
            std::ofstream f(out);
            if (!f) permdec::raise(permdec::ErrorCode::IoFailure, "cannot write '" + out + "'");
            permdec::write_geometry_table_csv(f);
        }
        return 0;
    }
};

struct SynthCmd {
    std::string sample = "homogeneous-2000";
    double voxel_size = 1000.0;
    std::uint32_t seed = 0;
    double mesh_fine = 2000.0;
    double mesh_coarse = 4000.0;
    double length_cm = 7.8;
    double diameter_cm = 3.8;
    std::string out_prefix;

    int run(const ConfigBinder& b) const {
        require_set(out_prefix, "--out-prefix");
        permdec::MicromodelSpec spec;
        spec.sample = permdec::sample_from_name(sample);
        spec.voxel_size_um = voxel_size;
        spec.seed = seed;
        spec.mesh_fine_um = mesh_fine;
        spec.mesh_coarse_um = mesh_coarse;
        spec.length_cm = length_cm;
        spec.diameter_cm = diameter_cm;
        const permdec::Micromodel m = permdec::generate_micromodel(spec);
        permdec::save_grid(m.kmap, out_prefix + ".kmap.raw");
        permdec::save_labels(m.labels, out_prefix + ".labels.raw");
        permdec::save_class_table_csv(m.table, out_prefix + ".table.csv");
        json body;
        body["sample"] = sample;
        body["dims"] = {m.kmap.nx, m.kmap.ny, m.kmap.nz};
        body["class_table"] = permdec::json_of_table(m.table);
        body["class_fractions"] = permdec::class_fractions(m.labels);
        permdec::write_json_file(permdec::report_envelope(std::move(body), b.resolved()), out_prefix + ".json");
        std::cout << "sample=" << sample << " dims=" << m.kmap.nx << "x" << m.kmap.ny << "x" << m.kmap.nz
                  << " files=" << out_prefix << ".{kmap.raw,labels.raw,table.csv,json}\n";
        return 0;
    }
};

struct SegmentCmd {
    std::string volume;
    std::string seeds;
    int k = 5;
    std::string out_labels;
    std::string model_out;
    std::string report_out;

    int run(const ConfigBinder& b) const {
        require_set(volume, "--volume");
        require_set(seeds, "--seeds");
        require_set(out_labels, "--out-labels");
        const permdec::VoxelGrid g = permdec::load_grid(volume);
        const permdec::TrainingSeeds s = permdec::load_seeds_json(seeds);
        const permdec::ClassifierModel model = permdec::train(g, s, k);
        const permdec::LabelGrid labels = permdec::classify(g, model);
        permdec::save_labels(labels, out_labels);
        if (!model_out.empty()) permdec::save_model_json(model, model_out);
        const auto fractions = permdec::class_fractions(labels);
        if (!report_out.empty()) {
            json body;
            body["k"] = model.k;
            body["kept_features"] = model.kept_features;
            body["dropped_features"] = model.dropped_features;
            body["n_train"] = model.n_train();
            json fr;
            for (permdec::DhzClass c : permdec::all_classes)
                fr[std::string(permdec::class_name(c))] = fractions[permdec::class_id(c)];
            body["class_fractions"] = std::move(fr);
            permdec::write_json_file(permdec::report_envelope(std::move(body), b.resolved()), report_out);
        }
        std::cout << "labels=" << out_labels;
        for (permdec::DhzClass c : permdec::all_classes)
            std::cout << " " << permdec::class_name(c) << "=" << permdec::format_double(fractions[permdec::class_id(c)]);
        std::cout << "\n";
        return 0;
    }
};

struct CalibrateCmd {
    std::string calibration;
    std::vector<double> queries;
    std::string json_out;

    int run(const ConfigBinder& b) const {
        require_set(calibration, "--calibration");
        const permdec::Calibration model = permdec::load_calibration_csv(calibration);
        json body;
        body["tag"] = model.tag();
        body["n_points"] = model.points().size();
        json pts = json::array();
        for (const auto& p : model.points()) pts.push_back({{"mriii", p.mriii}, {"grain_diameter_um", p.grain_diameter_um}});
        body["points"] = std::move(pts);
        const bool increasing =
            model.points().front().grain_diameter_um < model.points().back().grain_diameter_um;
        body["direction"] = increasing ? "increasing" : "decreasing";
        json results = json::array();
        std::cout << "tag=" << model.tag() << " points=" << model.points().size() << "\n";
        for (double q : queries) {
            const auto r = model(q);
            results.push_back(
                {{"mriii", q}, {"grain_diameter_um", r.grain_diameter_um}, {"extrapolated", r.extrapolated}});
            std::cout << "mriii=" << permdec::format_double(q)
                      << " grain_diameter_um=" << permdec::format_double(r.grain_diameter_um)
                      << " extrapolated=" << (r.extrapolated ? "true" : "false") << "\n";
        }
        body["queries"] = std::move(results);
        if (!json_out.empty())
            permdec::write_json_file(permdec::report_envelope(std::move(body), b.resolved()), json_out);
        return 0;
    }
};

json pipeline_result_json(const permdec::PipelineResult& pr) {
    json body = permdec::json_of_report(pr.report);
    body["mode"] = pr.mode;
    json fr;
    for (permdec::DhzClass c : permdec::all_classes)
        fr[std::string(permdec::class_name(c))] = pr.fractions[permdec::class_id(c)];
    body["class_fractions"] = std::move(fr);
    json means;
    for (const auto& [cls, m] : pr.per_class_mriii) means[std::string(permdec::class_name(cls))] = m;
    body["per_class_mriii"] = std::move(means);
    return body;
}

struct DecodeCmd {
    std::string volume;
    std::string seeds;
    std::string calibration;
    int k = 5;
    std::string packing = "rhombohedral";
    std::string flow_axis = "z";
    bool pyrite_zero = true;
    std::string report_out;
    std::string slice_csv;
    std::string labels_out;
    std::string kmap_out;
    std::string table_csv;

    int run(const ConfigBinder& b) const {
        require_set(volume, "--volume");
        require_set(calibration, "--calibration");
        permdec::VoxelGrid g = permdec::load_grid(volume);
        g = permdec::rotate_axis_to_z(g, permdec::axis_from_name(flow_axis));
        std::optional<permdec::TrainingSeeds> s;
        if (!seeds.empty()) s = permdec::load_seeds_json(seeds);
        const permdec::Calibration cal = permdec::pipeline_stage(
            "calibrate", [&] { return permdec::load_calibration_csv(calibration); });
        permdec::PipelineOptions opt;
        opt.k_neighbors = k;
        opt.packing = permdec::packing_from_name(packing);
        opt.pyrite_zero = pyrite_zero;
        const permdec::PipelineResult pr = permdec::run_decode_pipeline(g, s, cal, opt);
        if (!report_out.empty())
            permdec::write_json_file(permdec::report_envelope(pipeline_result_json(pr), b.resolved()), report_out);
        if (!slice_csv.empty()) permdec::write_slice_k_csv(pr.report.slice_k, slice_csv);
        if (!labels_out.empty()) permdec::save_labels(pr.labels, labels_out);
        if (!table_csv.empty()) permdec::save_class_table_csv(pr.report.class_table, table_csv);
        if (!kmap_out.empty())
            permdec::save_grid(permdec::assign_permeability(pr.labels, pr.report.class_table), kmap_out);
        std::cout << "mode=" << pr.mode << " k_3d_mD=" << permdec::format_double(pr.report.k_3d)
                  << " blocked=" << (pr.report.blocked ? "true" : "false")
                  << " bounds_mD=[" << permdec::format_double(pr.report.lower_bound_harmonic) << ","
                  << permdec::format_double(pr.report.upper_bound_arithmetic) << "]"
                  << " calib_tag=" << pr.report.calib_tag << "\n";
        for (permdec::DhzClass c : permdec::all_classes) {
            const permdec::TableEntry& e = pr.report.class_table.get(c);
            std::cout << permdec::class_name(c) << ": k_mD=" << permdec::format_double(e.k_mD);
            if (e.provenance == permdec::Provenance::FromCalibration)
                std::cout << " mriii=" << permdec::format_double(e.mriii_mean)
                          << " grain_diameter_um=" << permdec::format_double(e.grain_diameter_um)
                          << " extrapolated=" << (e.extrapolated ? "true" : "false");
            std::cout << "\n";
        }
        return 0;
    }
};

struct OracleCmd {
    std::string kmap;
    double tol = 1e-8;
    long long max_iter = 0;
    std::string flow_axis = "z";
    std::string pressure_out;
    std::string report_out;

    int run(const ConfigBinder& b) const {
        require_set(kmap, "--kmap");
        permdec::PermeabilityMap m = permdec::load_grid(kmap);
        m = permdec::rotate_axis_to_z(m, permdec::axis_from_name(flow_axis));
        const permdec::OracleSolution sol = permdec::resistor_oracle(m, tol, max_iter);
        if (!pressure_out.empty()) permdec::save_grid(sol.pressure, pressure_out);
        if (!report_out.empty())
            permdec::write_json_file(permdec::report_envelope(permdec::json_of_oracle(sol), b.resolved()),
                                     report_out);
        std::cout << "k_eff_mD=" << permdec::format_double(sol.k_eff_mD) << " iterations=" << sol.iterations
                  << " residual=" << permdec::format_double(sol.residual)
                  << " percolated=" << (sol.percolated ? "true" : "false") << "\n";
        return 0;
    }
};

struct ValidateCmd {
    std::vector<std::string> samples;
    double voxel_size = 1000.0;
    std::uint32_t seed = 0;
    double tol = 1e-8;
    std::string out_json;
    std::string out_csv;

    int run(const ConfigBinder& b) const {
        std::vector<std::string> names = samples;
        if (names.empty())
            for (permdec::SampleLayout l : permdec::all_sample_layouts) names.emplace_back(permdec::sample_name(l));
        if (names.size() == 1 && names[0] == "none") names.clear();

        json rows = json::array();
        std::ostringstream csv;
        csv << "sample,k_3dpim_mD,k_oracle_mD,relative_error,within_bounds,error\n";
        int failures = 0;
        for (const std::string& name : names) {
            json row;
            row["sample"] = name;
            try {
                permdec::MicromodelSpec spec;
                spec.sample = permdec::sample_from_name(name);
                spec.voxel_size_um = voxel_size;
                spec.seed = seed;
                const permdec::Micromodel m = permdec::generate_micromodel(spec);
                const permdec::DecodeReport pred = permdec::decode(m.kmap);
                const permdec::OracleSolution sol = permdec::resistor_oracle(m.kmap, tol);
                const permdec::ComparisonRecord cmp = permdec::compare(pred, sol);
                row["k_3dpim_mD"] = cmp.k_3dpim;
                row["k_oracle_mD"] = cmp.k_oracle;
                row["relative_error"] = cmp.relative_error;
                row["within_bounds"] = cmp.within_bounds;
                row["lower_bound_harmonic_mD"] = pred.lower_bound_harmonic;
                row["upper_bound_arithmetic_mD"] = pred.upper_bound_arithmetic;
                row["iterations"] = sol.iterations;
                row["residual"] = sol.residual;
                csv << name << "," << permdec::format_double(cmp.k_3dpim) << ","
                    << permdec::format_double(cmp.k_oracle) << "," << permdec::format_double(cmp.relative_error)
                    << "," << (cmp.within_bounds ? "true" : "false") << ",\n";
                std::cout << name << ": k_3dpim_mD=" << permdec::format_double(cmp.k_3dpim)
                          << " k_oracle_mD=" << permdec::format_double(cmp.k_oracle)
                          << " relative_error=" << permdec::format_double(cmp.relative_error)
                          << " within_bounds=" << (cmp.within_bounds ? "true" : "false") << "\n";
            } catch (const permdec::Error& e) {
                ++failures;
                row["error"] = e.what();
                csv << name << ",,,,," << e.what() << "\n";
                std::cout << name << ": error " << e.what() << "\n";
            }
            rows.push_back(std::move(row));
        }
        json body;
        body["rows"] = std::move(rows);
        body["failures"] = failures;
        if (!out_json.empty())
            permdec::write_json_file(permdec::report_envelope(std::move(body), b.resolved()), out_json);
        if (!out_csv.empty()) {
            std::ofstream f(out_csv);
            if (!f) permdec::raise(permdec::ErrorCode::IoFailure, "cannot write '" + out_csv + "'");
            f << csv.str();
        }
        return failures == 0 ? 0 : 4;
    }
};

struct ReportCmd {
    std::string volume;
    std::string labels;
    int bins = 64;
    std::string json_out;
    std::string csv_out;

    int run(const ConfigBinder& b) const {
        require_set(volume, "--volume");
        const permdec::VoxelGrid g = permdec::load_grid(volume);
        const permdec::Histogram h = permdec::histogram(g, bins);
        json body;
        body["dims"] = {g.nx, g.ny, g.nz};
        body["voxel_size_um"] = g.voxel_size_um;
        body["value_kind"] = permdec::value_kind_name(g.value_kind);
        body["mean"] = h.mean;
        body["n_voxels"] = g.values.size();
        body["histogram"] = {{"bin_edges", h.bin_edges}, {"counts", h.counts}};
        if (!labels.empty()) {
            const permdec::LabelGrid lg = permdec::load_labels(labels);
            json per_class;
            const auto fractions = permdec::class_fractions(lg);
            for (permdec::DhzClass c : permdec::all_classes) {
                json jc;
                jc["fraction"] = fractions[permdec::class_id(c)];
                if (fractions[permdec::class_id(c)] > 0.0)
                    jc["mean"] = permdec::masked_mean(g, lg, c);
                per_class[std::string(permdec::class_name(c))] = std::move(jc);
            }
            body["per_class"] = std::move(per_class);
        }
        if (!csv_out.empty()) permdec::write_histogram_csv(h, csv_out);
        if (!json_out.empty())
            permdec::write_json_file(permdec::report_envelope(std::move(body), b.resolved()), json_out);
        std::cout << "mean=" << permdec::format_double(h.mean) << " n_voxels=" << g.values.size() << "\n";
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permeability decoding for 3D intensity volumes"};
    app.require_subcommand(1);

    GeometryCmd geom;
    CLI::App* geom_app = app.add_subcommand("geometry-table", "packing-geometry constant table");
    ConfigBinder geom_b(geom_app);
    geom_b.option("--out", "out", geom.out, "CSV output path (default: stdout)");
    geom_b.option("--json-out", "json_out", geom.json_out, "JSON report path");

    SynthCmd synth;
    CLI::App* synth_app = app.add_subcommand("synth", "generate a synthetic micromodel");
    ConfigBinder synth_b(synth_app);
    synth_b.option("--sample", "sample", synth.sample,
                   "layout: homogeneous-2000|homogeneous-4000|serial-two-zone|parallel-two-zone|arbitrary-heterogeneous");
    synth_b.option("--voxel-size", "voxel_size", synth.voxel_size, "voxel edge length, um");
    synth_b.option("--seed", "seed", synth.seed, "cell-assignment seed (arbitrary-heterogeneous)");
    synth_b.option("--mesh-fine", "mesh_fine", synth.mesh_fine, "fine mesh lateral, um");
    synth_b.option("--mesh-coarse", "mesh_coarse", synth.mesh_coarse, "coarse mesh lateral, um");
    synth_b.option("--length-cm", "length_cm", synth.length_cm, "cylinder length, cm");
    synth_b.option("--diameter-cm", "diameter_cm", synth.diameter_cm, "cylinder diameter, cm");
    synth_b.option("--out-prefix", "out_prefix", synth.out_prefix, "output file prefix");

    SegmentCmd seg;
    CLI::App* seg_app = app.add_subcommand("segment", "classify voxels into DHZ classes");
    ConfigBinder seg_b(seg_app);
    seg_b.option("--volume", "volume", seg.volume, "intensity volume");
    seg_b.option("--seeds", "seeds", seg.seeds, "training seeds JSON");
    seg_b.option("--k-neighbors", "k_neighbors", seg.k, "neighbor count (odd)");
    seg_b.option("--out-labels", "out_labels", seg.out_labels, "label volume output");
    seg_b.option("--model-out", "model_out", seg.model_out, "classifier model JSON output");
    seg_b.option("--report-out", "report_out", seg.report_out, "segmentation report JSON");

    CalibrateCmd calib;
    CLI::App* calib_app = app.add_subcommand("calibrate", "inspect and query a calibration file");
    ConfigBinder calib_b(calib_app);
    calib_b.option("--calibration", "calibration", calib.calibration, "calibration CSV");
    calib_b.option("--query", "query", calib.queries, "intensity values to convert");
    calib_b.option("--json-out", "json_out", calib.json_out, "JSON report path");

    DecodeCmd dec;
    CLI::App* dec_app = app.add_subcommand("decode", "decode an intensity volume to permeability");
    ConfigBinder dec_b(dec_app);
    dec_b.option("--volume", "volume", dec.volume, "intensity volume");
    dec_b.option("--seeds", "seeds", dec.seeds, "training seeds JSON (omit: whole-volume mode)");
    dec_b.option("--calibration", "calibration", dec.calibration, "calibration CSV");
    dec_b.option("--k-neighbors", "k_neighbors", dec.k, "neighbor count (odd)");
    dec_b.option("--packing", "packing", dec.packing, "cubic|triclinic|rhombohedral");
    dec_b.option("--flow-axis", "flow_axis", dec.flow_axis, "x|y|z: axis rotated onto z before decode");
    dec_b.flag("--pyrite-zero,!--no-pyrite-zero", "pyrite_zero", dec.pyrite_zero,
               "force the Pyrite class to 0 mD");
    dec_b.option("--report-out", "report_out", dec.report_out, "decode report JSON");
    dec_b.option("--slice-csv", "slice_csv", dec.slice_csv, "per-slice permeability CSV");
    dec_b.option("--labels-out", "labels_out", dec.labels_out, "label volume output");
    dec_b.option("--kmap-out", "kmap_out", dec.kmap_out, "permeability map output");
    dec_b.option("--table-csv", "table_csv", dec.table_csv, "class permeability table CSV");

    OracleCmd orc;
    CLI::App* orc_app = app.add_subcommand("oracle", "resistor-network effective permeability");
    ConfigBinder orc_b(orc_app);
    orc_b.option("--kmap", "kmap", orc.kmap, "permeability map volume");
    orc_b.option("--tol", "tol", orc.tol, "relative residual tolerance");
    orc_b.option("--max-iter", "max_iter", orc.max_iter, "iteration cap (0: automatic)");
    orc_b.option("--flow-axis", "flow_axis", orc.flow_axis, "x|y|z: axis rotated onto z before solving");
    orc_b.option("--pressure-out", "pressure_out", orc.pressure_out, "pressure field output");
    orc_b.option("--report-out", "report_out", orc.report_out, "oracle report JSON");

    ValidateCmd val;
    CLI::App* val_app = app.add_subcommand("validate", "decode-vs-oracle suite over the five sample layouts");
    ConfigBinder val_b(val_app);
    val_b.option("--samples", "samples", val.samples, "layout names (default: all five; 'none': empty suite)");
    val_b.option("--voxel-size", "voxel_size", val.voxel_size, "voxel edge length, um");
    val_b.option("--seed", "seed", val.seed, "cell-assignment seed");
    val_b.option("--tol", "tol", val.tol, "oracle tolerance");
    val_b.option("--out-json", "out_json", val.out_json, "suite report JSON");
    val_b.option("--out-csv", "out_csv", val.out_csv, "suite table CSV");

    ReportCmd rep;
    CLI::App* rep_app = app.add_subcommand("report", "volume statistics and histograms");
    ConfigBinder rep_b(rep_app);
    rep_b.option("--volume", "volume", rep.volume, "input volume");
    rep_b.option("--labels", "labels", rep.labels, "label volume for per-class statistics");
    rep_b.option("--bins", "bins", rep.bins, "histogram bin count");
    rep_b.option("--json-out", "json_out", rep.json_out, "JSON report path");
    rep_b.option("--csv-out", "csv_out", rep.csv_out, "histogram CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(geom_app)) {
            geom_b.apply_config();
            return geom.run(geom_b);
        }
        if (app.got_subcommand(synth_app)) {
            synth_b.apply_config();
            return synth.run(synth_b);
        }
        if (app.got_subcommand(seg_app)) {
            seg_b.apply_config();
            return seg.run(seg_b);
        }
        if (app.got_subcommand(calib_app)) {
            calib_b.apply_config();
            return calib.run(calib_b);
        }
        if (app.got_subcommand(dec_app)) {
            dec_b.apply_config();
            return dec.run(dec_b);
        }
        if (app.got_subcommand(orc_app)) {
            orc_b.apply_config();
            return orc.run(orc_b);
        }
        if (app.got_subcommand(val_app)) {
            val_b.apply_config();
            return val.run(val_b);
        }
        if (app.got_subcommand(rep_app)) {
            rep_b.apply_config();
            return rep.run(rep_b);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const permdec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == permdec::ErrorCode::NonConvergence ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
