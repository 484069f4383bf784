#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "medqc/forest.hpp"
#include "medqc/metrics.hpp"
#include "medqc/sampling.hpp"

namespace medqc {

struct EvalReport {
    ModelVariant variant = ModelVariant::FullMedicalDomain;
    int folds = 10;
    uint64_t seed = 0;
    ForestConfig forest;
    Confusion confusion{};
    std::array<double, kNumClasses> per_class_f{};
    std::array<double, kNumClasses> per_class_roc{};
    std::vector<std::pair<std::string, double>> info_gains;  // feature name, gain

    double macro_f() const {
        double sum = 0.0;
        for (double f : per_class_f) sum += f;
        return sum / kNumClasses;
    }
};

// Rebalancing applied inside each training fold instead of up front, for
// leakage-free evaluation.
struct InFoldSampling {
    UndersampleTargets undersample_targets = no_undersampling();
    SmoteConfig smote;

    bool any() const {
        for (int t : undersample_targets)
            if (t != kKeepClass) return true;
        return smote.active();
    }
};

// Per-class round-robin fold assignment after a seeded shuffle. Throws
// DataError when a present class has fewer members than folds.
std::vector<int> stratified_folds(const Dataset& data, int folds, uint64_t seed);

// Stratified k-fold cross-validation: pooled confusion and one-vs-rest
// scores, per-class F-measure and ROC area, information gain computed on the
// full input data.
EvalReport cross_validate(const Dataset& data, ModelVariant variant, const ForestConfig& cfg,
                          int folds, uint64_t seed, int threads = 0,
                          const InFoldSampling* in_fold = nullptr);

// Deterministic plain-text rendering; byte-identical for identical reports.
std::string render_report(const EvalReport& report);

}  // namespace medqc
