#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "permdec/calib.hpp"
#include "permdec/errors.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"
#include "permdec/numeric.hpp"
#include "permdec/pim.hpp"
#include "permdec/segmenter.hpp"

namespace permdec {

// Re-raises module errors with the pipeline stage name prepended, keeping
// the original error code.
template <class F>
decltype(auto) pipeline_stage(const std::string& name, F&& f) {
    try {
        return std::forward<F>(f)();
    } catch (const Error& e) {
        const std::string prefix = std::string(to_string(e.code())) + ": ";
        std::string msg = e.what();
        if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
        raise(e.code(), "stage " + name + ": " + msg);
    }
}

struct PipelineOptions {
    int k_neighbors = 5;
    PackingConfig packing = PackingConfig::Rhombohedral;
    // Pyrite is an impermeable mineral; its table entry defaults to a direct
    // 0 rather than a calibrated value. Explicit overrides win.
    bool pyrite_zero = true;
    std::map<DhzClass, double> overrides;
};

struct PipelineResult {
    DecodeReport report;  // class_table and calib_tag filled
    LabelGrid labels;
    std::array<double, kNumClasses> fractions{};
    std::map<DhzClass, double> per_class_mriii;
    std::string mode;  // "seeded" or "whole-volume"
};

// Full decode chain: segment (when seeds are given), per-class mean
// intensity, calibrated class permeability table, per-voxel map, slice and
// stack aggregation. Without seeds the volume is treated as one CMV: every
// voxel is labeled Intergranular1 and the three porous classes share the
// whole-volume mean intensity, so a homogeneous volume decodes to exactly
// the single-class calibrated permeability.
inline PipelineResult run_decode_pipeline(const VoxelGrid& grid, const std::optional<TrainingSeeds>& seeds,
                                          const Calibration& calibration, const PipelineOptions& opt = {}) {
    grid.validate();
    if (grid.value_kind != ValueKind::Intensity)
        raise(ErrorCode::InvalidArgument, "decode expects an intensity volume, got value_kind '" +
                                              value_kind_name(grid.value_kind) + "'");

    PipelineResult res;
    std::map<DhzClass, double> overrides = opt.overrides;
    if (opt.pyrite_zero) overrides.emplace(DhzClass::Pyrite, 0.0);

    if (seeds && !seeds->empty()) {
        res.mode = "seeded";
        const ClassifierModel model =
            pipeline_stage("train", [&] { return train(grid, *seeds, opt.k_neighbors); });
        res.labels = pipeline_stage("classify", [&] { return classify(grid, model); });
    } else {
        res.mode = "whole-volume";
        res.labels = LabelGrid::filled(grid.nx, grid.ny, grid.nz, grid.voxel_size_um, DhzClass::Intergranular1);
    }
    res.fractions = class_fractions(res.labels);

    pipeline_stage("class-means", [&] {
        if (res.mode == "whole-volume") {
            const double whole = mean_of(grid.values);
            for (DhzClass c : {DhzClass::OpenVug, DhzClass::Intergranular1, DhzClass::Intergranular2})
                res.per_class_mriii[c] = whole;
        } else {
            for (DhzClass c : all_classes)
                if (res.fractions[class_id(c)] > 0.0) res.per_class_mriii[c] = masked_mean(grid, res.labels, c);
        }
    });

    const ClassPermeabilityTable table = pipeline_stage("calibrate", [&] {
        std::map<DhzClass, double> effective_overrides = overrides;
        // Classes absent from the volume and without a mean get a direct 0:
        // no voxel uses the entry, but the table must stay complete.
        for (DhzClass c : all_classes)
            if (!effective_overrides.count(c) && !res.per_class_mriii.count(c))
                effective_overrides.emplace(c, 0.0);
        return table_from_calibration(res.per_class_mriii, calibration, opt.packing, effective_overrides);
    });

    const PermeabilityMap kmap =
        pipeline_stage("assign", [&] { return assign_permeability(res.labels, table); });
    res.report = pipeline_stage("decode", [&] { return decode(kmap); });
    res.report.class_table = table;
    res.report.calib_tag = calibration.tag();
    return res;
}

}  // namespace permdec
