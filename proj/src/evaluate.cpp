#include "medqc/evaluate.hpp"

#include <cstdio>
#include <string>

#include "medqc/error.hpp"
#include "medqc/rng.hpp"

namespace medqc {
namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void append_row(std::string& out, std::string_view name, std::string_view value) {
    std::string row(name);
    if (row.size() < 28) row.append(28 - row.size(), ' ');
    row.append(value);
    row.push_back('\n');
    out.append(row);
}

}  // namespace

std::vector<int> stratified_folds(const Dataset& data, int folds, uint64_t seed) {
    if (folds < 2) throw DataError("folds must be >= 2");
    const int n = static_cast<int>(data.vectors.size());
    auto counts = data.class_counts();
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[c] > 0 && counts[c] < folds) {
            throw DataError("class " + std::string(to_string(kAllClasses[c])) + " has " +
                            std::to_string(counts[c]) + " members, fewer than " +
                            std::to_string(folds) + " folds");
        }
    }
    std::vector<int> fold_of(n, -1);
    Rng rng(mix64(seed, 0xf01d5u));
    for (int c = 0; c < kNumClasses; ++c) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(data.vectors[i].label) == c) members.push_back(i);
        }
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i) {
            fold_of[members[i]] = static_cast<int>(i) % folds;
        }
    }
    return fold_of;
}

EvalReport cross_validate(const Dataset& data, ModelVariant variant, const ForestConfig& cfg,
                          int folds, uint64_t seed, int threads, const InFoldSampling* in_fold) {
    const int n = static_cast<int>(data.vectors.size());
    std::vector<int> fold_of = stratified_folds(data, folds, seed);

    EvalReport report;
    report.variant = variant;
    report.folds = folds;
    report.seed = seed;
    report.forest = cfg;

    std::vector<int> features = variant_features(variant);
    std::array<std::vector<ScoredInstance>, kNumClasses> pooled_scores;

    for (int fold = 0; fold < folds; ++fold) {
        Dataset train;
        for (int i = 0; i < n; ++i) {
            if (fold_of[i] != fold) train.vectors.push_back(data.vectors[i]);
        }
        if (in_fold && in_fold->any()) {
            train = undersample(train, in_fold->undersample_targets,
                                mix64(seed, 0xda7au + static_cast<uint64_t>(fold)));
            if (in_fold->smote.active()) {
                SmoteConfig fold_smote = in_fold->smote;
                fold_smote.seed = mix64(in_fold->smote.seed, static_cast<uint64_t>(fold));
                train = smote(train, fold_smote);
            }
        }
        ForestConfig fold_cfg = cfg;
        fold_cfg.seed = mix64(cfg.seed, 0x7e57u + static_cast<uint64_t>(fold));
        ForestModel model = train_forest(train, features, fold_cfg, threads);

        for (int i = 0; i < n; ++i) {
            if (fold_of[i] != fold) continue;
            auto proba = predict_proba(model, data.vectors[i]);
            int actual = static_cast<int>(data.vectors[i].label);
            int predicted = static_cast<int>(predict_class(proba));
            ++report.confusion[actual][predicted];
            for (int c = 0; c < kNumClasses; ++c) {
                pooled_scores[c].push_back({proba[c], actual == c});
            }
        }
    }

    for (int c = 0; c < kNumClasses; ++c) {
        report.per_class_f[c] = f_measure(report.confusion, c);
        report.per_class_roc[c] = roc_auc(pooled_scores[c]);
    }
    for (int feature : features) {
        report.info_gains.emplace_back(std::string(feature_name(feature)),
                                       info_gain(data, feature));
    }
    return report;
}

std::string render_report(const EvalReport& report) {
    std::string out;
    out.append("medqc evaluation report\n");
    out.append("=======================\n");
    append_row(out, "variant", to_string(report.variant));
    append_row(out, "folds", std::to_string(report.folds));
    append_row(out, "seed", std::to_string(report.seed));
    append_row(out, "trees", std::to_string(report.forest.num_trees));
    append_row(out, "features-per-split",
               report.forest.features_per_split > 0
                   ? std::to_string(report.forest.features_per_split)
                   : std::string("sqrt"));
    append_row(out, "min-leaf", std::to_string(report.forest.min_leaf));
    append_row(out, "max-depth",
               report.forest.max_depth >= 0 ? std::to_string(report.forest.max_depth)
                                            : std::string("unlimited"));
    out.push_back('\n');

    for (int c = 0; c < kNumClasses; ++c) {
        append_row(out, "ROC Area " + std::string(to_string(kAllClasses[c])),
                   fixed6(report.per_class_roc[c]));
    }
    for (int c = 0; c < kNumClasses; ++c) {
        append_row(out, "F-Measure " + std::string(to_string(kAllClasses[c])),
                   fixed6(report.per_class_f[c]));
    }
    append_row(out, "Macro F-Measure", fixed6(report.macro_f()));
    out.push_back('\n');

    out.append("confusion matrix (rows: actual, columns: predicted)\n");
    {
        std::string header(8, ' ');
        for (QualityClass c : kAllClasses) {
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%8s", std::string(to_string(c)).c_str());
            header.append(buf);
        }
        header.push_back('\n');
        out.append(header);
        for (int r = 0; r < kNumClasses; ++r) {
            char name[16];
            std::snprintf(name, sizeof(name), "%-8s", std::string(to_string(kAllClasses[r])).c_str());
            std::string row(name);
            for (int c = 0; c < kNumClasses; ++c) {
                char buf[24];
                std::snprintf(buf, sizeof(buf), "%8lld",
                              static_cast<long long>(report.confusion[r][c]));
                row.append(buf);
            }
            row.push_back('\n');
            out.append(row);
        }
    }
    out.push_back('\n');

    out.append("information gain\n");
    for (const auto& [name, gain] : report.info_gains) {
        append_row(out, name, fixed6(gain));
    }
    return out;
}

}  // namespace medqc
