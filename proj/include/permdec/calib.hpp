#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "permdec/errors.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"
#include "permdec/numeric.hpp"

namespace permdec {

// One calibration knot: a mean intensity paired with the grain diameter that
// produces it under the imaging protocol identified by `tag`.
struct CalibPoint {
    double mriii;
    double grain_diameter_um;
};

// Monotone piecewise-linear map from mean intensity to grain diameter,
// linear in log(diameter) so that equal intensity steps multiply diameter by
// equal factors. Build with make_calibration; query with operator().
class Calibration {
  public:
    struct Result {
        double grain_diameter_um;
        bool extrapolated;  // query fell outside [min mriii, max mriii]
    };

    Calibration(std::vector<CalibPoint> points, std::string tag)
        : points_(std::move(points)), tag_(std::move(tag)) {
        if (points_.size() < 2) raise(ErrorCode::TooFewPoints, "calibration needs at least 2 points");
        std::sort(points_.begin(), points_.end(),
                  [](const CalibPoint& a, const CalibPoint& b) { return a.mriii < b.mriii; });
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const CalibPoint& p = points_[i];
            if (!std::isfinite(p.mriii) || !std::isfinite(p.grain_diameter_um))
                raise(ErrorCode::NonFiniteValue, "calibration point is not finite");
            if (!(p.grain_diameter_um > 0.0))
                raise(ErrorCode::InvalidArgument, "grain diameter must be > 0");
            if (i > 0 && !(points_[i - 1].mriii < p.mriii))
                raise(ErrorCode::DuplicateIntensity, "calibration intensities must be distinct");
        }
        const bool inc = points_.front().grain_diameter_um < points_.back().grain_diameter_um;
        for (std::size_t i = 1; i < points_.size(); ++i) {
            const double prev = points_[i - 1].grain_diameter_um;
            const double cur = points_[i].grain_diameter_um;
            if (inc ? !(prev < cur) : !(prev > cur))
                raise(ErrorCode::NonMonotone, "grain diameter must be strictly monotone in intensity");
        }
    }

    // Exact knot queries return the stored diameter bit-for-bit; interior
    // queries interpolate log-linearly; end segments extend for out-of-range
    // queries and the result is flagged.
    Result operator()(double mriii) const {
        if (!std::isfinite(mriii)) raise(ErrorCode::NonFiniteValue, "query intensity is not finite");
        auto it = std::lower_bound(points_.begin(), points_.end(), mriii,
                                   [](const CalibPoint& p, double v) { return p.mriii < v; });
        if (it != points_.end() && it->mriii == mriii) return {it->grain_diameter_um, false};
        const bool extrapolated = it == points_.begin() || it == points_.end();
        std::size_t hi = static_cast<std::size_t>(it - points_.begin());
        hi = std::clamp<std::size_t>(hi, 1, points_.size() - 1);
        const CalibPoint& a = points_[hi - 1];
        const CalibPoint& b = points_[hi];
        const double t = (mriii - a.mriii) / (b.mriii - a.mriii);
        const double logd =
            std::log(a.grain_diameter_um) + t * (std::log(b.grain_diameter_um) - std::log(a.grain_diameter_um));
        return {std::exp(logd), extrapolated};
    }

    const std::vector<CalibPoint>& points() const { return points_; }
    const std::string& tag() const { return tag_; }

  private:
    std::vector<CalibPoint> points_;  // sorted by mriii
    std::string tag_;
};

inline Calibration make_calibration(std::vector<CalibPoint> points, std::string tag) {
    return Calibration(std::move(points), std::move(tag));
}

// CSV layout: optional `# tag=<text>` comment lines, one header line
// `mriii,grain_diameter_um`, then one knot per line.
inline Calibration load_calibration_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoFailure, "cannot open calibration file '" + path + "'");
    std::vector<CalibPoint> points;
    std::string tag = "untagged";
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string key = "tag=";
            auto pos = line.find(key);
            if (pos != std::string::npos) {
                tag = line.substr(pos + key.size());
                while (!tag.empty() && (tag.front() == ' ' || tag.front() == '\t')) tag.erase(tag.begin());
            }
            continue;
        }
        if (!header_seen) {
            if (line.find("mriii") == std::string::npos)
                raise(ErrorCode::InvalidArgument,
                      path + ":" + std::to_string(line_no) + ": expected header 'mriii,grain_diameter_um'");
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            raise(ErrorCode::InvalidArgument, path + ":" + std::to_string(line_no) + ": expected 2 columns");
        try {
            points.push_back({std::stod(a), std::stod(b)});
        } catch (const std::exception&) {
            raise(ErrorCode::InvalidArgument, path + ":" + std::to_string(line_no) + ": bad number");
        }
    }
    return make_calibration(std::move(points), std::move(tag));
}

struct GrainDiameterResult {
    double grain_diameter_um = 0.0;
    bool extrapolated = false;
    double mriii_mean = 0.0;  // the mean intensity that was converted
};

// Mean intensity of the (masked) volume pushed through the calibration. The
// mean is the direct arithmetic voxel mean, so the result is independent of
// any histogram binning.
inline GrainDiameterResult decode_grain_diameter(const VoxelGrid& grid, const Calibration& model) {
    grid.validate();
    const double m = mean_of(grid.values);
    const Calibration::Result r = model(m);
    return {r.grain_diameter_um, r.extrapolated, m};
}

inline GrainDiameterResult decode_grain_diameter(const VoxelGrid& grid, const Calibration& model,
                                                 const LabelGrid& mask, DhzClass cls) {
    const double m = masked_mean(grid, mask, cls);
    const Calibration::Result r = model(m);
    return {r.grain_diameter_um, r.extrapolated, m};
}

inline void save_calibration_csv(const Calibration& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write calibration file '" + path + "'");
    out << "# tag=" << c.tag() << "\n";
    out << "mriii,grain_diameter_um\n";
    for (const CalibPoint& p : c.points())
        out << format_double(p.mriii) << "," << format_double(p.grain_diameter_um) << "\n";
    if (!out) raise(ErrorCode::IoFailure, "write failed for '" + path + "'");
}

}  // namespace permdec
