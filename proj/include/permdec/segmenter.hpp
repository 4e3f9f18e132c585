#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permdec/errors.hpp"
#include "permdec/grid.hpp"
#include "permdec/labels.hpp"

namespace permdec {

struct TrainingSeed {
    int x = 0;
    int y = 0;
    int z = 0;
    DhzClass cls = DhzClass::Pyrite;
};

using TrainingSeeds = std::vector<TrainingSeed>;

inline TrainingSeeds load_seeds_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoFailure, "cannot open seeds file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::InvalidArgument, "seeds file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_array()) raise(ErrorCode::InvalidArgument, "seeds file must hold a JSON array");
    TrainingSeeds seeds;
    for (const auto& item : j) {
        TrainingSeed s;
        try {
            s.x = item.at("x").get<int>();
            s.y = item.at("y").get<int>();
            s.z = item.at("z").get<int>();
            s.cls = class_from_name(item.at("class_name").get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::InvalidArgument, std::string("bad seed entry: ") + e.what());
        }
        seeds.push_back(s);
    }
    return seeds;
}

inline void save_seeds_json(const TrainingSeeds& seeds, const std::string& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const TrainingSeed& s : seeds)
        j.push_back({{"x", s.x}, {"y", s.y}, {"z", s.z}, {"class_name", std::string(class_name(s.cls))}});
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write seeds file '" + path + "'");
    out << j.dump(2) << "\n";
}

inline constexpr int kNumFeatures = 4;

// Local descriptor of one voxel: raw intensity, 3x3x3 neighborhood mean,
// 3x3x3 neighborhood standard deviation (population), and central-difference
// gradient magnitude. Neighborhoods clamp to the grid edge, so a constant
// field yields [c, c, 0, 0] at every voxel including corners.
inline std::array<double, kNumFeatures> extract_features(const VoxelGrid& g, int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= g.nx || y >= g.ny || z >= g.nz)
        raise(ErrorCode::OutOfRange, "feature coordinates out of range");
    auto at_clamped = [&](int cx, int cy, int cz) {
        cx = std::clamp(cx, 0, g.nx - 1);
        cy = std::clamp(cy, 0, g.ny - 1);
        cz = std::clamp(cz, 0, g.nz - 1);
        return g.at(cx, cy, cz);
    };
    std::array<double, 27> nb;
    int i = 0;
    for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) nb[static_cast<std::size_t>(i++)] = at_clamped(x + dx, y + dy, z + dz);
    double mean;
    double stddev;
    if (all_equal(nb)) {  // keeps constant fields exactly [c, c, 0, 0]
        mean = nb[0];
        stddev = 0.0;
    } else {
        mean = pairwise_sum(nb) / 27.0;
        double ssd = 0.0;
        for (double v : nb) {
            const double d = v - mean;
            ssd += d * d;
        }
        stddev = std::sqrt(ssd / 27.0);
    }
    const double gx = (at_clamped(x + 1, y, z) - at_clamped(x - 1, y, z)) / 2.0;
    const double gy = (at_clamped(x, y + 1, z) - at_clamped(x, y - 1, z)) / 2.0;
    const double gz = (at_clamped(x, y, z + 1) - at_clamped(x, y, z - 1)) / 2.0;
    const double grad = std::sqrt(gx * gx + gy * gy + gz * gz);
    return {g.at(x, y, z), mean, stddev, grad};
}

// Immutable k-NN model over standardized features. Features that do not
// separate the seeded classes (between-class variance not above within-class
// variance, including the all-constant case) are dropped and listed in
// dropped_features; queries use only kept_features.
struct ClassifierModel {
    int k = 5;
    std::array<double, kNumFeatures> feature_means{};
    std::array<double, kNumFeatures> feature_stds{};
    std::vector<int> kept_features;
    std::vector<int> dropped_features;
    std::vector<double> train_vectors;  // standardized, row-major, stride = kept_features.size()
    std::vector<std::uint8_t> train_labels;

    std::size_t n_train() const { return train_labels.size(); }
    std::size_t n_kept() const { return kept_features.size(); }

    void validate() const {
        if (k < 1 || k % 2 == 0) raise(ErrorCode::InvalidArgument, "k must be a positive odd integer");
        if (kept_features.empty()) raise(ErrorCode::NoUsableFeatures, "model keeps no features");
        if (train_labels.empty()) raise(ErrorCode::InvalidArgument, "model has no training vectors");
        if (train_vectors.size() != n_train() * n_kept())
            raise(ErrorCode::SizeMismatch, "training vector storage does not match label count");
        if (static_cast<std::size_t>(k) > n_train())
            raise(ErrorCode::InvalidArgument, "k exceeds training set size");
        for (std::uint8_t id : train_labels)
            if (id >= kNumClasses) raise(ErrorCode::InvalidArgument, "bad class id in model");
    }
};

inline void save_model_json(const ClassifierModel& m, const std::string& path) {
    nlohmann::json j;
    j["k"] = m.k;
    j["feature_means"] = m.feature_means;
    j["feature_stds"] = m.feature_stds;
    j["kept_features"] = m.kept_features;
    j["dropped_features"] = m.dropped_features;
    j["train_vectors"] = m.train_vectors;
    j["train_labels"] = m.train_labels;
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoFailure, "cannot write model file '" + path + "'");
    out << j.dump(2) << "\n";
}

inline ClassifierModel load_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoFailure, "cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::InvalidArgument, "model file '" + path + "' is not valid JSON: " + e.what());
    }
    ClassifierModel m;
    try {
        m.k = j.at("k").get<int>();
        m.feature_means = j.at("feature_means").get<std::array<double, kNumFeatures>>();
        m.feature_stds = j.at("feature_stds").get<std::array<double, kNumFeatures>>();
        m.kept_features = j.at("kept_features").get<std::vector<int>>();
        m.dropped_features = j.at("dropped_features").get<std::vector<int>>();
        m.train_vectors = j.at("train_vectors").get<std::vector<double>>();
        m.train_labels = j.at("train_labels").get<std::vector<std::uint8_t>>();
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::InvalidArgument, std::string("bad model file: ") + e.what());
    }
    m.validate();
    return m;
}

inline ClassifierModel train(const VoxelGrid& g, const TrainingSeeds& seeds, int k = 5) {
    g.validate();
    if (seeds.empty()) raise(ErrorCode::InvalidArgument, "no training seeds");
    if (k < 1 || k % 2 == 0) raise(ErrorCode::InvalidArgument, "k must be a positive odd integer");
    if (static_cast<std::size_t>(k) > seeds.size())
        raise(ErrorCode::InvalidArgument, "k exceeds seed count");
    std::array<int, kNumClasses> per_class{};
    for (const TrainingSeed& s : seeds) {
        if (s.x < 0 || s.y < 0 || s.z < 0 || s.x >= g.nx || s.y >= g.ny || s.z >= g.nz)
            raise(ErrorCode::OutOfRange, "seed coordinates out of range");
        ++per_class[class_id(s.cls)];
    }
    for (DhzClass c : all_classes)
        if (per_class[class_id(c)] == 0)
            raise(ErrorCode::MissingClassSeeds, "no seeds for class " + std::string(class_name(c)));

    const std::size_t n = seeds.size();
    std::vector<std::array<double, kNumFeatures>> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = extract_features(g, seeds[i].x, seeds[i].y, seeds[i].z);

    ClassifierModel m;
    m.k = k;
    // A feature earns its place only if its class structure rises above its
    // noise: the between-class variance of the seeds must exceed the pooled
    // within-class variance (one-way Fisher screen). Constant features fail
    // trivially (0 > 0), so the zero-variance degenerate case is subsumed.
    for (int f = 0; f < kNumFeatures; ++f) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += raw[i][f];
        const double mean = sum / static_cast<double>(n);
        std::array<double, kNumClasses> class_sum{};
        for (std::size_t i = 0; i < n; ++i) class_sum[class_id(seeds[i].cls)] += raw[i][f];
        std::array<double, kNumClasses> class_mean{};
        for (DhzClass c : all_classes)
            class_mean[class_id(c)] = class_sum[class_id(c)] / static_cast<double>(per_class[class_id(c)]);
        double within = 0.0;
        double ssd = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = raw[i][f] - mean;
            ssd += d * d;
            const double w = raw[i][f] - class_mean[class_id(seeds[i].cls)];
            within += w * w;
        }
        double between = 0.0;
        for (DhzClass c : all_classes) {
            const double d = class_mean[class_id(c)] - mean;
            between += static_cast<double>(per_class[class_id(c)]) * d * d;
        }
        m.feature_means[f] = mean;
        m.feature_stds[f] = std::sqrt(ssd / static_cast<double>(n));
        if (between > within)
            m.kept_features.push_back(f);
        else
            m.dropped_features.push_back(f);
    }
    if (m.kept_features.empty())
        raise(ErrorCode::NoUsableFeatures, "no feature separates the seeded classes");

    m.train_vectors.reserve(n * m.n_kept());
    m.train_labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int f : m.kept_features)
            m.train_vectors.push_back((raw[i][f] - m.feature_means[f]) / m.feature_stds[f]);
        m.train_labels.push_back(class_id(seeds[i].cls));
    }
    m.validate();
    return m;
}

namespace detail {

// Majority vote over the k nearest training vectors; candidate order is
// (squared distance, training index) so the result is independent of
// traversal or thread order. Vote ties resolve to the smallest class id.
inline std::uint8_t knn_label(const ClassifierModel& m, const double* query) {
    const std::size_t nf = m.n_kept();
    const std::size_t n = m.n_train();
    const std::size_t k = static_cast<std::size_t>(m.k);
    // best holds (dist2, train index), insertion-sorted, at most k entries.
    std::array<std::pair<double, std::size_t>, 64> small{};
    std::vector<std::pair<double, std::size_t>> big;
    std::pair<double, std::size_t>* best = small.data();
    if (k > small.size()) {
        big.resize(k);
        best = big.data();
    }
    std::size_t filled = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = m.train_vectors.data() + i * nf;
        double d2 = 0.0;
        for (std::size_t f = 0; f < nf; ++f) {
            const double d = query[f] - row[f];
            d2 += d * d;
        }
        const std::pair<double, std::size_t> cand{d2, i};
        if (filled == k && !(cand < best[filled - 1])) continue;
        std::size_t pos = filled < k ? filled : k - 1;
        while (pos > 0 && cand < best[pos - 1]) {
            best[pos] = best[pos - 1];
            --pos;
        }
        best[pos] = cand;
        if (filled < k) ++filled;
    }
    std::array<int, kNumClasses> votes{};
    for (std::size_t i = 0; i < filled; ++i) ++votes[m.train_labels[best[i].second]];
    std::uint8_t winner = 0;
    for (std::uint8_t c = 1; c < kNumClasses; ++c)
        if (votes[c] > votes[winner]) winner = c;
    return winner;
}

}  // namespace detail

// Labels every voxel; bit-identical across runs and thread counts because
// each voxel depends only on its own neighborhood and the immutable model.
inline LabelGrid classify(const VoxelGrid& g, const ClassifierModel& m) {
    g.validate();
    m.validate();
    LabelGrid out = LabelGrid::filled(g.nx, g.ny, g.nz, g.voxel_size_um, DhzClass::Pyrite);
    const long long total = static_cast<long long>(g.values.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long idx = 0; idx < total; ++idx) {
        const int x = static_cast<int>(idx % g.nx);
        const int y = static_cast<int>((idx / g.nx) % g.ny);
        const int z = static_cast<int>(idx / (static_cast<long long>(g.nx) * g.ny));
        const std::array<double, kNumFeatures> raw = extract_features(g, x, y, z);
        std::array<double, kNumFeatures> q{};
        std::size_t qi = 0;
        for (int f : m.kept_features) q[qi++] = (raw[f] - m.feature_means[f]) / m.feature_stds[f];
        out.labels[static_cast<std::size_t>(idx)] = detail::knn_label(m, q.data());
    }
    return out;
}

}  // namespace permdec
