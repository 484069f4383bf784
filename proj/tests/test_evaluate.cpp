#include <doctest.h>

#include <array>
#include <vector>

#include "medqc/error.hpp"
#include "medqc/evaluate.hpp"
#include "medqc/rng.hpp"

using namespace medqc;

namespace {

// Six classes, each concentrated around its own value of one feature with a
// wide margin: any reasonable forest separates them perfectly.
Dataset separable_six(int per_class, Rng& rng) {
    Dataset data;
    for (int c = 0; c < kNumClasses; ++c) {
        for (int i = 0; i < per_class; ++i) {
            FeatureVector v;
            v.label = kAllClasses[c];
            v.completeness = 10.0 * c + rng.next_unit();
            v.article_length = 3.0 * c + rng.next_unit() * 0.5;
            v.category = ArticleCategory::O;
            data.vectors.push_back(v);
        }
    }
    return data;
}

}  // namespace

TEST_CASE("stratified folds deal one member per class per fold when counts divide") {
    Rng rng(100);
    Dataset data = separable_six(10, rng);
    std::vector<int> fold_of = stratified_folds(data, 10, 3);
    std::array<std::array<int, 10>, kNumClasses> seen{};
    for (std::size_t i = 0; i < data.vectors.size(); ++i) {
        REQUIRE(fold_of[i] >= 0);
        REQUIRE(fold_of[i] < 10);
        ++seen[static_cast<int>(data.vectors[i].label)][fold_of[i]];
    }
    for (int c = 0; c < kNumClasses; ++c) {
        for (int f = 0; f < 10; ++f) CHECK(seen[c][f] == 1);
    }
}

TEST_CASE("a class smaller than the fold count is a hard error naming the class") {
    Rng rng(101);
    Dataset data = separable_six(10, rng);
    data.vectors.resize(data.vectors.size() - 1);  // FA now has 9 members
    CHECK_THROWS_WITH_AS(stratified_folds(data, 10, 3), doctest::Contains("FA"), DataError);
}

TEST_CASE("absent classes are tolerated") {
    Rng rng(102);
    Dataset data;
    for (int i = 0; i < 30; ++i) {
        FeatureVector v;
        v.label = i % 2 ? QualityClass::Stub : QualityClass::FA;
        v.completeness = i % 2 ? 0.0 : 5.0;
        data.vectors.push_back(v);
    }
    ForestConfig cfg;
    cfg.num_trees = 10;
    cfg.seed = 4;
    EvalReport report = cross_validate(data, ModelVariant::Baseline, cfg, 5, 9);
    CHECK(report.per_class_roc[static_cast<int>(QualityClass::C)] == 0.5);
    CHECK(report.per_class_f[static_cast<int>(QualityClass::C)] == 0.0);
}

TEST_CASE("pooled confusion accounts for every instance") {
    Rng rng(103);
    Dataset data = separable_six(12, rng);
    ForestConfig cfg;
    cfg.num_trees = 20;
    cfg.seed = 8;
    EvalReport report = cross_validate(data, ModelVariant::Baseline, cfg, 4, 7);
    int64_t total = 0;
    for (int r = 0; r < kNumClasses; ++r) {
        int64_t row = 0;
        for (int c = 0; c < kNumClasses; ++c) row += report.confusion[r][c];
        CHECK(row == 12);  // row sums equal per-class instance counts
        total += row;
    }
    CHECK(total == static_cast<int64_t>(data.vectors.size()));
}

TEST_CASE("perfectly separable data scores 1.0 everywhere") {
    Rng rng(104);
    Dataset data = separable_six(20, rng);
    ForestConfig cfg;
    cfg.num_trees = 40;
    cfg.seed = 11;
    EvalReport report = cross_validate(data, ModelVariant::Baseline, cfg, 10, 5);
    for (int c = 0; c < kNumClasses; ++c) {
        CHECK(report.per_class_f[c] == 1.0);
        CHECK(report.per_class_roc[c] == 1.0);
    }
    CHECK(report.macro_f() == 1.0);
}

TEST_CASE("identical seeds give byte-identical rendered reports") {
    Rng rng(105);
    Dataset data = separable_six(10, rng);
    ForestConfig cfg;
    cfg.num_trees = 15;
    cfg.seed = 2;
    EvalReport a = cross_validate(data, ModelVariant::Baseline, cfg, 5, 42);
    EvalReport b = cross_validate(data, ModelVariant::Baseline, cfg, 5, 42);
    CHECK(render_report(a) == render_report(b));
    EvalReport c = cross_validate(data, ModelVariant::Baseline, cfg, 5, 43);
    CHECK(render_report(a) != render_report(c));
}

TEST_CASE("report lists the variant's features in order") {
    Rng rng(106);
    Dataset data = separable_six(10, rng);
    ForestConfig cfg;
    cfg.num_trees = 5;
    cfg.seed = 1;
    EvalReport report = cross_validate(data, ModelVariant::FullMedicalDomain, cfg, 5, 1);
    REQUIRE(report.info_gains.size() == 8);
    CHECK(report.info_gains[0].first == "ArticleLength");
    CHECK(report.info_gains.back().first == "Category");
    std::string rendered = render_report(report);
    CHECK(rendered.find("ROC Area Stub") != std::string::npos);
    CHECK(rendered.find("F-Measure FA") != std::string::npos);
    CHECK(rendered.find("information gain") != std::string::npos);
}

TEST_CASE("in-fold rebalancing runs and stays deterministic") {
    Rng rng(107);
    Dataset data = separable_six(12, rng);
    ForestConfig cfg;
    cfg.num_trees = 10;
    cfg.seed = 6;
    InFoldSampling in_fold;
    in_fold.smote.k = 3;
    in_fold.smote.percent[static_cast<int>(QualityClass::FA)] = 50;
    in_fold.undersample_targets[static_cast<int>(QualityClass::Stub)] = 8;
    EvalReport a = cross_validate(data, ModelVariant::Baseline, cfg, 4, 3, 0, &in_fold);
    EvalReport b = cross_validate(data, ModelVariant::Baseline, cfg, 4, 3, 0, &in_fold);
    CHECK(render_report(a) == render_report(b));
    for (int c = 0; c < kNumClasses; ++c) {
        CHECK(a.per_class_f[c] >= 0.9);  // separable data survives rebalancing
    }
}
