#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "medqc/quality.hpp"

namespace medqc {

// confusion[actual][predicted]
using Confusion = std::array<std::array<int64_t, kNumClasses>, kNumClasses>;

inline Confusion empty_confusion() { return Confusion{}; }

// F1 for one class: 2PR/(P+R), 0 whenever a denominator vanishes.
double f_measure(const Confusion& confusion, int cls);

struct ScoredInstance {
    double score = 0.0;
    bool positive = false;
};

// One-vs-rest area under the ROC curve via the rank statistic, with midranks
// for ties; 0.5 when either side is empty.
double roc_auc(std::vector<ScoredInstance> scores);

}  // namespace medqc
