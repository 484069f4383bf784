#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "medqc/sampling.hpp"

namespace medqc {

struct ForestConfig {
    int num_trees = 100;
    int features_per_split = 0;  // 0 -> floor(sqrt(#active features))
    int min_leaf = 1;
    int max_depth = -1;  // -1 unlimited
    uint64_t seed = 0;
};

// Axis-aligned threshold test on numeric features, one-vs-rest equality test
// on the nominal category feature. feature == -1 marks a leaf.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int nominal_value = -1;  // ArticleCategory index for nominal splits
    int left = -1;
    int right = -1;
    std::array<int32_t, kNumClasses> counts{};  // leaf class histogram
};

struct Tree {
    std::vector<TreeNode> nodes;

    bool operator==(const Tree&) const = default;
};

struct ForestModel {
    ForestConfig config;
    std::vector<int> active_features;  // ids into feature_name()
    std::vector<Tree> trees;
};

// Reference implementation: trees trained one after another. Each tree owns
// an RNG derived from (seed, tree index), so the result is a pure function of
// (data, features, config).
ForestModel train_forest_serial(const Dataset& data, const std::vector<int>& features,
                                const ForestConfig& cfg);

// Same forest, trees fanned out over OpenMP threads.
ForestModel train_forest(const Dataset& data, const std::vector<int>& features,
                         const ForestConfig& cfg, int threads = 0);

// Mean of per-leaf class frequencies over all trees; sums to 1.
std::array<double, kNumClasses> predict_proba(const ForestModel& model, const FeatureVector& v);

// Argmax of predict_proba, ties broken by class order.
QualityClass predict_class(const std::array<double, kNumClasses>& proba);

// H(class) in bits.
double class_entropy(const Dataset& data);

// H(class) - H(class | feature). Numeric features are discretized by
// recursive entropy-based binary splitting with the MDL stopping rule; the
// nominal category feature is used as-is.
double info_gain(const Dataset& data, int feature);

nlohmann::json forest_to_json(const ForestModel& model);
ForestModel forest_from_json(const nlohmann::json& j);  // throws DataError

}  // namespace medqc
