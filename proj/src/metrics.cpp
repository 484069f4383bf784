#include "medqc/metrics.hpp"

#include <algorithm>

namespace medqc {

double f_measure(const Confusion& confusion, int cls) {
    int64_t tp = confusion[cls][cls];
    int64_t fp = 0;
    int64_t fn = 0;
    for (int other = 0; other < kNumClasses; ++other) {
        if (other == cls) continue;
        fp += confusion[other][cls];
        fn += confusion[cls][other];
    }
    if (tp + fp == 0 || tp + fn == 0) return 0.0;
    double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double roc_auc(std::vector<ScoredInstance> scores) {
    int64_t num_pos = 0;
    for (const ScoredInstance& s : scores) num_pos += s.positive ? 1 : 0;
    int64_t num_neg = static_cast<int64_t>(scores.size()) - num_pos;
    if (num_pos == 0 || num_neg == 0) return 0.5;

    std::stable_sort(scores.begin(), scores.end(),
                     [](const ScoredInstance& a, const ScoredInstance& b) {
                         return a.score < b.score;
                     });

    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < scores.size()) {
        std::size_t j = i;
        while (j < scores.size() && scores[j].score == scores[i].score) ++j;
        // ranks are 1-based; tied scores share the mean rank of their run
        double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) {
            if (scores[t].positive) pos_rank_sum += midrank;
        }
        i = j;
    }
    double u = pos_rank_sum - 0.5 * static_cast<double>(num_pos) * static_cast<double>(num_pos + 1);
    return u / (static_cast<double>(num_pos) * static_cast<double>(num_neg));
}

}  // namespace medqc
