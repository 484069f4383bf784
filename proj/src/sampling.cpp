#include "medqc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "medqc/error.hpp"
#include "medqc/rng.hpp"

namespace medqc {
namespace {

std::vector<int> class_member_indices(const Dataset& data, QualityClass cls, bool real_only) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(data.vectors.size()); ++i) {
        const FeatureVector& v = data.vectors[i];
        if (v.label == cls && (!real_only || !v.synthetic)) out.push_back(i);
    }
    return out;
}

// Squared distance over min-max-normalized numeric attributes plus a unit
// term for a category mismatch.
double squared_distance(const FeatureVector& a, const FeatureVector& b,
                        const std::array<double, kNumNumericFeatures>& ranges) {
    double d2 = 0.0;
    for (int j = 0; j < kNumNumericFeatures; ++j) {
        if (ranges[j] <= 0.0) continue;
        double diff = (numeric_feature(a, j) - numeric_feature(b, j)) / ranges[j];
        d2 += diff * diff;
    }
    if (a.category != b.category) d2 += 1.0;
    return d2;
}

std::array<double, kNumNumericFeatures> attribute_ranges(const Dataset& data,
                                                         const std::vector<int>& members) {
    std::array<double, kNumNumericFeatures> ranges{};
    for (int j = 0; j < kNumNumericFeatures; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int idx : members) {
            double v = numeric_feature(data.vectors[idx], j);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ranges[j] = members.empty() ? 0.0 : hi - lo;
    }
    return ranges;
}

std::vector<int> neighbors_of(const Dataset& data, const std::vector<int>& members,
                              const std::array<double, kNumNumericFeatures>& ranges,
                              int member_index, int k) {
    std::vector<std::pair<double, int>> scored;
    scored.reserve(members.size());
    for (int idx : members) {
        if (idx == member_index) continue;
        scored.emplace_back(squared_distance(data.vectors[member_index], data.vectors[idx], ranges),
                            idx);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int> out;
    for (int i = 0; i < k && i < static_cast<int>(scored.size()); ++i) {
        out.push_back(scored[i].second);
    }
    return out;
}

}  // namespace

Dataset undersample(const Dataset& data, const UndersampleTargets& targets, uint64_t seed) {
    std::vector<char> keep(data.vectors.size(), 1);
    Rng rng(mix64(seed, 0x5eedu));
    for (int c = 0; c < kNumClasses; ++c) {
        int target = targets[c];
        if (target == kKeepClass) continue;
        std::vector<int> members = class_member_indices(data, kAllClasses[c], /*real_only=*/false);
        int count = static_cast<int>(members.size());
        if (target > count) {
            throw DataError("undersample target " + std::to_string(target) + " exceeds the " +
                            std::to_string(count) + " members of class " +
                            std::string(to_string(kAllClasses[c])));
        }
        if (target == count) continue;
        rng.shuffle(members);
        for (int i = target; i < count; ++i) keep[members[i]] = 0;
    }
    Dataset out;
    for (std::size_t i = 0; i < data.vectors.size(); ++i) {
        if (keep[i]) out.vectors.push_back(data.vectors[i]);
    }
    return out;
}

std::vector<int> nearest_neighbors(const Dataset& data, int member_index, int k) {
    QualityClass cls = data.vectors[member_index].label;
    std::vector<int> members = class_member_indices(data, cls, /*real_only=*/false);
    return neighbors_of(data, members, attribute_ranges(data, members), member_index, k);
}

Dataset smote(const Dataset& data, const SmoteConfig& cfg, std::vector<SmoteTrace>* trace) {
    if (cfg.k < 1) throw DataError("SMOTE k must be >= 1");
    Dataset out;
    out.vectors = data.vectors;
    Rng rng(mix64(cfg.seed, 0x50e7eu));

    for (int c = 0; c < kNumClasses; ++c) {
        int percent = cfg.percent[c];
        if (percent <= 0) continue;
        QualityClass cls = kAllClasses[c];
        std::vector<int> members = class_member_indices(data, cls, /*real_only=*/true);
        const int n = static_cast<int>(members.size());
        const int total = static_cast<int>((static_cast<int64_t>(percent) * n) / 100);
        if (total == 0) continue;
        if (n < cfg.k + 1) {
            throw DataError("class " + std::string(to_string(cls)) + " has " + std::to_string(n) +
                            " real members, fewer than k+1 = " + std::to_string(cfg.k + 1));
        }

        std::vector<int> seeds;
        seeds.reserve(total);
        if (percent < 100) {
            std::vector<int> perm = members;
            rng.shuffle(perm);
            for (int i = 0; i < total; ++i) seeds.push_back(perm[i]);
        } else {
            for (int i = 0; i < total; ++i) seeds.push_back(members[i % n]);
        }

        auto ranges = attribute_ranges(data, members);
        std::vector<std::vector<int>> knn(members.size());
        for (std::size_t m = 0; m < members.size(); ++m) {
            knn[m] = neighbors_of(data, members, ranges, members[m], cfg.k);
        }
        std::vector<int> member_slot(data.vectors.size(), -1);
        for (std::size_t m = 0; m < members.size(); ++m) member_slot[members[m]] = static_cast<int>(m);

        for (int i = 0; i < total; ++i) {
            int seed_idx = seeds[i];
            const std::vector<int>& nbrs = knn[member_slot[seed_idx]];
            int neighbor_idx = nbrs[rng.index(nbrs.size())];

            const FeatureVector& seed_vec = data.vectors[seed_idx];
            const FeatureVector& nbr_vec = data.vectors[neighbor_idx];
            FeatureVector synth = seed_vec;
            synth.title = "synthetic:" + std::string(to_string(cls)) + ":" + std::to_string(i + 1);
            synth.synthetic = true;
            for (int j = 0; j < kNumNumericFeatures; ++j) {
                double gap = rng.next_unit();
                double s = numeric_feature(seed_vec, j);
                double nb = numeric_feature(nbr_vec, j);
                set_numeric_feature(synth, j, s + gap * (nb - s));
            }
            if (trace) {
                trace->push_back({cls, seed_idx, neighbor_idx, static_cast<int>(out.vectors.size())});
            }
            out.vectors.push_back(std::move(synth));
        }
    }
    return out;
}

}  // namespace medqc
