#include "medqc/forest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "medqc/error.hpp"
#include "medqc/rng.hpp"

namespace medqc {
namespace {

using ClassCounts = std::array<int64_t, kNumClasses>;

double entropy(const ClassCounts& counts, int64_t total) {
    if (total <= 0) return 0.0;
    double h = 0.0;
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[c] == 0) continue;
        double p = static_cast<double>(counts[c]) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

int classes_present(const ClassCounts& counts) {
    int k = 0;
    for (int64_t c : counts) k += c > 0 ? 1 : 0;
    return k;
}

struct SplitChoice {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    int nominal_value = -1;
    double gain = 0.0;
};

int resolve_features_per_split(const ForestConfig& cfg, int num_features) {
    if (cfg.features_per_split > 0) return cfg.features_per_split;
    return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(num_features))));
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const std::vector<int>& features, const ForestConfig& cfg,
                int features_per_split, uint64_t tree_seed)
        : data_(data),
          features_(features),
          cfg_(cfg),
          features_per_split_(features_per_split),
          rng_(tree_seed) {}

    Tree build() {
        const int n = static_cast<int>(data_.vectors.size());
        std::vector<int> bootstrap(n);
        for (int i = 0; i < n; ++i) bootstrap[i] = static_cast<int>(rng_.index(n));
        Tree tree;
        grow(tree, bootstrap, 0);
        return tree;
    }

private:
    const Dataset& data_;
    const std::vector<int>& features_;
    const ForestConfig& cfg_;
    const int features_per_split_;
    Rng rng_;

    ClassCounts histogram(const std::vector<int>& idxs) const {
        ClassCounts counts{};
        for (int i : idxs) ++counts[static_cast<int>(data_.vectors[i].label)];
        return counts;
    }

    int make_leaf(Tree& tree, const ClassCounts& counts) {
        TreeNode node;
        for (int c = 0; c < kNumClasses; ++c) node.counts[c] = static_cast<int32_t>(counts[c]);
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    std::vector<int> sample_feature_subset() {
        std::vector<int> pool = features_;
        int take = std::min<int>(features_per_split_, static_cast<int>(pool.size()));
        for (int i = 0; i < take; ++i) {
            std::size_t j = i + rng_.index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(take);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    void consider_numeric(int feature, const std::vector<int>& idxs, const ClassCounts& counts,
                          double node_entropy, SplitChoice& best) const {
        const int64_t n = static_cast<int64_t>(idxs.size());
        std::vector<std::pair<double, int>> values;
        values.reserve(idxs.size());
        for (int i : idxs) {
            values.emplace_back(numeric_feature(data_.vectors[i], feature),
                                static_cast<int>(data_.vectors[i].label));
        }
        std::sort(values.begin(), values.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        ClassCounts left{};
        int64_t n_left = 0;
        for (std::size_t p = 1; p < values.size(); ++p) {
            ++left[values[p - 1].second];
            ++n_left;
            if (values[p].first == values[p - 1].first) continue;
            int64_t n_right = n - n_left;
            if (n_left < cfg_.min_leaf || n_right < cfg_.min_leaf) continue;
            ClassCounts right{};
            for (int c = 0; c < kNumClasses; ++c) right[c] = counts[c] - left[c];
            double child = (static_cast<double>(n_left) * entropy(left, n_left) +
                            static_cast<double>(n_right) * entropy(right, n_right)) /
                           static_cast<double>(n);
            double gain = node_entropy - child;
            if (gain > best.gain) {
                best.valid = true;
                best.feature = feature;
                best.threshold = 0.5 * (values[p - 1].first + values[p].first);
                best.nominal_value = -1;
                best.gain = gain;
            }
        }
    }

    void consider_nominal(const std::vector<int>& idxs, const ClassCounts& counts,
                          double node_entropy, SplitChoice& best) const {
        const int64_t n = static_cast<int64_t>(idxs.size());
        std::array<ClassCounts, kNumCategories> per_value{};
        std::array<int64_t, kNumCategories> value_totals{};
        for (int i : idxs) {
            int v = static_cast<int>(data_.vectors[i].category);
            ++per_value[v][static_cast<int>(data_.vectors[i].label)];
            ++value_totals[v];
        }
        for (int v = 0; v < kNumCategories; ++v) {
            int64_t n_left = value_totals[v];
            int64_t n_right = n - n_left;
            if (n_left < cfg_.min_leaf || n_right < cfg_.min_leaf) continue;
            ClassCounts right{};
            for (int c = 0; c < kNumClasses; ++c) right[c] = counts[c] - per_value[v][c];
            double child = (static_cast<double>(n_left) * entropy(per_value[v], n_left) +
                            static_cast<double>(n_right) * entropy(right, n_right)) /
                           static_cast<double>(n);
            double gain = node_entropy - child;
            if (gain > best.gain) {
                best.valid = true;
                best.feature = kCategoryFeature;
                best.threshold = 0.0;
                best.nominal_value = v;
                best.gain = gain;
            }
        }
    }

    bool goes_left(const FeatureVector& v, const SplitChoice& split) const {
        if (split.feature == kCategoryFeature) {
            return static_cast<int>(v.category) == split.nominal_value;
        }
        return numeric_feature(v, split.feature) < split.threshold;
    }

    int grow(Tree& tree, const std::vector<int>& idxs, int depth) {
        ClassCounts counts = histogram(idxs);
        double node_entropy = entropy(counts, static_cast<int64_t>(idxs.size()));
        bool depth_capped = cfg_.max_depth >= 0 && depth >= cfg_.max_depth;
        if (node_entropy == 0.0 || depth_capped ||
            static_cast<int>(idxs.size()) < 2 * cfg_.min_leaf) {
            return make_leaf(tree, counts);
        }

        SplitChoice best;
        for (int feature : sample_feature_subset()) {
            if (feature == kCategoryFeature) {
                consider_nominal(idxs, counts, node_entropy, best);
            } else {
                consider_numeric(feature, idxs, counts, node_entropy, best);
            }
        }
        if (!best.valid || best.gain <= 0.0) {
            return make_leaf(tree, counts);
        }

        std::vector<int> left_idxs, right_idxs;
        left_idxs.reserve(idxs.size());
        right_idxs.reserve(idxs.size());
        for (int i : idxs) {
            (goes_left(data_.vectors[i], best) ? left_idxs : right_idxs).push_back(i);
        }

        TreeNode node;
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.nominal_value = best.nominal_value;
        tree.nodes.push_back(node);
        int id = static_cast<int>(tree.nodes.size()) - 1;
        int left = grow(tree, left_idxs, depth + 1);
        int right = grow(tree, right_idxs, depth + 1);
        tree.nodes[id].left = left;
        tree.nodes[id].right = right;
        return id;
    }
};

void validate_training_inputs(const Dataset& data, const std::vector<int>& features,
                              const ForestConfig& cfg, int features_per_split) {
    if (data.vectors.empty()) throw DataError("training data is empty");
    if (features.empty()) throw DataError("no active features");
    if (cfg.num_trees < 1) throw DataError("num_trees must be >= 1");
    if (cfg.min_leaf < 1) throw DataError("min_leaf must be >= 1");
    if (features_per_split < 1 || features_per_split > static_cast<int>(features.size())) {
        throw DataError("features_per_split must be between 1 and " +
                        std::to_string(features.size()));
    }
    auto counts = data.class_counts();
    if (classes_present({counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]}) < 2) {
        throw DataError("training data has fewer than 2 classes");
    }
    for (int id : features) {
        if (id < 0 || id >= kNumFeatures) throw DataError("unknown feature id " + std::to_string(id));
    }
}

Tree build_one_tree(const Dataset& data, const std::vector<int>& features, const ForestConfig& cfg,
                    int features_per_split, int tree_index) {
    TreeBuilder builder(data, features, cfg, features_per_split,
                        mix64(cfg.seed, static_cast<uint64_t>(tree_index)));
    return builder.build();
}

}  // namespace

ForestModel train_forest_serial(const Dataset& data, const std::vector<int>& features,
                                const ForestConfig& cfg) {
    int fps = resolve_features_per_split(cfg, static_cast<int>(features.size()));
    validate_training_inputs(data, features, cfg, fps);
    ForestModel model;
    model.config = cfg;
    model.active_features = features;
    model.trees.resize(cfg.num_trees);
    for (int t = 0; t < cfg.num_trees; ++t) {
        model.trees[t] = build_one_tree(data, features, cfg, fps, t);
    }
    return model;
}

ForestModel train_forest(const Dataset& data, const std::vector<int>& features,
                         const ForestConfig& cfg, int threads) {
    int fps = resolve_features_per_split(cfg, static_cast<int>(features.size()));
    validate_training_inputs(data, features, cfg, fps);
    ForestModel model;
    model.config = cfg;
    model.active_features = features;
    model.trees.resize(cfg.num_trees);
#ifdef _OPENMP
    if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int t = 0; t < cfg.num_trees; ++t) {
            model.trees[t] = build_one_tree(data, features, cfg, fps, t);
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < cfg.num_trees; ++t) {
            model.trees[t] = build_one_tree(data, features, cfg, fps, t);
        }
    }
#else
    (void)threads;
    for (int t = 0; t < cfg.num_trees; ++t) {
        model.trees[t] = build_one_tree(data, features, cfg, fps, t);
    }
#endif
    return model;
}

std::array<double, kNumClasses> predict_proba(const ForestModel& model, const FeatureVector& v) {
    std::array<double, kNumClasses> proba{};
    for (const Tree& tree : model.trees) {
        int node_id = 0;
        const TreeNode* node = &tree.nodes[node_id];
        while (node->feature >= 0) {
            bool left;
            if (node->feature == kCategoryFeature) {
                left = static_cast<int>(v.category) == node->nominal_value;
            } else {
                left = numeric_feature(v, node->feature) < node->threshold;
            }
            node_id = left ? node->left : node->right;
            node = &tree.nodes[node_id];
        }
        int64_t total = 0;
        for (int c = 0; c < kNumClasses; ++c) total += node->counts[c];
        if (total > 0) {
            for (int c = 0; c < kNumClasses; ++c) {
                proba[c] += static_cast<double>(node->counts[c]) / static_cast<double>(total);
            }
        }
    }
    if (!model.trees.empty()) {
        for (double& p : proba) p /= static_cast<double>(model.trees.size());
    }
    return proba;
}

QualityClass predict_class(const std::array<double, kNumClasses>& proba) {
    int best = 0;
    for (int c = 1; c < kNumClasses; ++c) {
        if (proba[c] > proba[best]) best = c;
    }
    return kAllClasses[best];
}

double class_entropy(const Dataset& data) {
    ClassCounts counts{};
    for (const FeatureVector& v : data.vectors) ++counts[static_cast<int>(v.label)];
    return entropy(counts, static_cast<int64_t>(data.vectors.size()));
}

namespace {

// Fayyad-Irani recursive binary discretization with the MDL stopping rule.
class MdlDiscretizer {
public:
    explicit MdlDiscretizer(std::vector<std::pair<double, int>> values)
        : values_(std::move(values)) {
        std::sort(values_.begin(), values_.end());
    }

    // Returns bin class-count vectors.
    std::vector<ClassCounts> discretize() {
        split(0, values_.size());
        std::sort(cuts_.begin(), cuts_.end());
        std::vector<ClassCounts> bins;
        std::size_t start = 0;
        for (std::size_t cut : cuts_) {
            bins.push_back(range_counts(start, cut));
            start = cut;
        }
        bins.push_back(range_counts(start, values_.size()));
        return bins;
    }

private:
    std::vector<std::pair<double, int>> values_;
    std::vector<std::size_t> cuts_;

    ClassCounts range_counts(std::size_t lo, std::size_t hi) const {
        ClassCounts counts{};
        for (std::size_t i = lo; i < hi; ++i) ++counts[values_[i].second];
        return counts;
    }

    void split(std::size_t lo, std::size_t hi) {
        const int64_t n = static_cast<int64_t>(hi - lo);
        if (n < 2) return;
        ClassCounts total = range_counts(lo, hi);
        double h = entropy(total, n);
        if (h == 0.0) return;

        double best_gain = 0.0;
        std::size_t best_cut = 0;
        ClassCounts best_left{};
        bool found = false;

        ClassCounts left{};
        int64_t n_left = 0;
        for (std::size_t p = lo + 1; p < hi; ++p) {
            ++left[values_[p - 1].second];
            ++n_left;
            if (values_[p].first == values_[p - 1].first) continue;
            int64_t n_right = n - n_left;
            ClassCounts right{};
            for (int c = 0; c < kNumClasses; ++c) right[c] = total[c] - left[c];
            double child = (static_cast<double>(n_left) * entropy(left, n_left) +
                            static_cast<double>(n_right) * entropy(right, n_right)) /
                           static_cast<double>(n);
            double gain = h - child;
            if (!found || gain > best_gain) {
                found = true;
                best_gain = gain;
                best_cut = p;
                best_left = left;
            }
        }
        if (!found) return;

        ClassCounts right{};
        for (int c = 0; c < kNumClasses; ++c) right[c] = total[c] - best_left[c];
        int64_t n_left_best = 0;
        for (int64_t c : best_left) n_left_best += c;
        int64_t n_right_best = n - n_left_best;

        int k = classes_present(total);
        int k1 = classes_present(best_left);
        int k2 = classes_present(right);
        double h1 = entropy(best_left, n_left_best);
        double h2 = entropy(right, n_right_best);
        double delta = std::log2(std::pow(3.0, k) - 2.0) -
                       (static_cast<double>(k) * h - static_cast<double>(k1) * h1 -
                        static_cast<double>(k2) * h2);
        double threshold =
            (std::log2(static_cast<double>(n) - 1.0) + delta) / static_cast<double>(n);
        if (best_gain <= threshold) return;

        cuts_.push_back(best_cut);
        split(lo, best_cut);
        split(best_cut, hi);
    }
};

}  // namespace

double info_gain(const Dataset& data, int feature) {
    const int64_t n = static_cast<int64_t>(data.vectors.size());
    if (n < 2) return 0.0;
    double h = class_entropy(data);
    if (h == 0.0) return 0.0;

    double conditional = 0.0;
    if (feature == kCategoryFeature) {
        std::array<ClassCounts, kNumCategories> per_value{};
        std::array<int64_t, kNumCategories> totals{};
        for (const FeatureVector& v : data.vectors) {
            ++per_value[static_cast<int>(v.category)][static_cast<int>(v.label)];
            ++totals[static_cast<int>(v.category)];
        }
        for (int val = 0; val < kNumCategories; ++val) {
            if (totals[val] == 0) continue;
            conditional += (static_cast<double>(totals[val]) / static_cast<double>(n)) *
                           entropy(per_value[val], totals[val]);
        }
    } else {
        std::vector<std::pair<double, int>> values;
        values.reserve(data.vectors.size());
        for (const FeatureVector& v : data.vectors) {
            values.emplace_back(numeric_feature(v, feature), static_cast<int>(v.label));
        }
        for (const ClassCounts& bin : MdlDiscretizer(std::move(values)).discretize()) {
            int64_t bin_total = 0;
            for (int64_t c : bin) bin_total += c;
            if (bin_total == 0) continue;
            conditional += (static_cast<double>(bin_total) / static_cast<double>(n)) *
                           entropy(bin, bin_total);
        }
    }
    return std::max(0.0, h - conditional);
}

nlohmann::json forest_to_json(const ForestModel& model) {
    nlohmann::json j;
    j["config"] = {{"num_trees", model.config.num_trees},
                   {"features_per_split", model.config.features_per_split},
                   {"min_leaf", model.config.min_leaf},
                   {"max_depth", model.config.max_depth},
                   {"seed", model.config.seed}};
    j["active_features"] = model.active_features;
    nlohmann::json trees = nlohmann::json::array();
    for (const Tree& tree : model.trees) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const TreeNode& node : tree.nodes) {
            nlohmann::json nj;
            if (node.feature < 0) {
                nj["counts"] = node.counts;
            } else {
                nj["f"] = node.feature;
                if (node.feature == kCategoryFeature) {
                    nj["v"] = node.nominal_value;
                } else {
                    nj["t"] = node.threshold;
                }
                nj["l"] = node.left;
                nj["r"] = node.right;
            }
            nodes.push_back(std::move(nj));
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    j["trees"] = std::move(trees);
    return j;
}

ForestModel forest_from_json(const nlohmann::json& j) {
    try {
        ForestModel model;
        const auto& cfg = j.at("config");
        model.config.num_trees = cfg.at("num_trees").get<int>();
        model.config.features_per_split = cfg.at("features_per_split").get<int>();
        model.config.min_leaf = cfg.at("min_leaf").get<int>();
        model.config.max_depth = cfg.at("max_depth").get<int>();
        model.config.seed = cfg.at("seed").get<uint64_t>();
        model.active_features = j.at("active_features").get<std::vector<int>>();
        for (const auto& tj : j.at("trees")) {
            Tree tree;
            for (const auto& nj : tj.at("nodes")) {
                TreeNode node;
                if (nj.contains("counts")) {
                    auto counts = nj.at("counts").get<std::vector<int32_t>>();
                    if (counts.size() != kNumClasses) throw DataError("bad leaf histogram size");
                    std::copy(counts.begin(), counts.end(), node.counts.begin());
                } else {
                    node.feature = nj.at("f").get<int>();
                    if (node.feature == kCategoryFeature) {
                        node.nominal_value = nj.at("v").get<int>();
                    } else {
                        node.threshold = nj.at("t").get<double>();
                    }
                    node.left = nj.at("l").get<int>();
                    node.right = nj.at("r").get<int>();
                }
                tree.nodes.push_back(node);
            }
            if (tree.nodes.empty()) throw DataError("empty tree in model");
            model.trees.push_back(std::move(tree));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed forest model: ") + e.what());
    }
}

}  // namespace medqc
