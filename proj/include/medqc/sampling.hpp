#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "medqc/features.hpp"
#include "medqc/quality.hpp"

namespace medqc {

struct Dataset {
    std::vector<FeatureVector> vectors;

    std::array<int, kNumClasses> class_counts() const {
        std::array<int, kNumClasses> counts{};
        for (const FeatureVector& v : vectors) ++counts[static_cast<int>(v.label)];
        return counts;
    }
};

// Per-class undersampling targets; kKeepClass leaves a class untouched.
inline constexpr int kKeepClass = -1;
using UndersampleTargets = std::array<int, kNumClasses>;

inline UndersampleTargets no_undersampling() {
    UndersampleTargets t;
    t.fill(kKeepClass);
    return t;
}

// Uniform random subset without replacement per targeted class; original
// order of the kept vectors is preserved. Throws DataError when a target
// exceeds the class count.
Dataset undersample(const Dataset& data, const UndersampleTargets& targets, uint64_t seed);

struct SmoteConfig {
    int k = 5;
    std::array<int, kNumClasses> percent{};  // 0 = class untouched
    uint64_t seed = 0;

    bool active() const {
        for (int p : percent)
            if (p > 0) return true;
        return false;
    }
};

// Provenance of one synthetic vector, for verification.
struct SmoteTrace {
    QualityClass cls;
    int seed_index;      // into the input dataset
    int neighbor_index;  // into the input dataset
    int output_index;    // into the returned dataset
};

// Classic synthetic minority oversampling: for class c with n real members,
// floor(percent/100 * n) synthetic vectors are generated by interpolating
// each numeric attribute independently between a seed member and one of its
// k nearest in-class neighbors; the nominal category is copied from the seed.
// Percentages below 100 draw seeds from a random permutation; 100 and above
// cycle through members in order. Throws DataError when a class has fewer
// than k+1 real members.
Dataset smote(const Dataset& data, const SmoteConfig& cfg,
              std::vector<SmoteTrace>* trace = nullptr);

// k nearest in-class neighbors of one member, excluding itself. Distances are
// Euclidean over min-max-normalized numeric attributes; a category mismatch
// contributes 1; ties break by dataset order.
std::vector<int> nearest_neighbors(const Dataset& data, int member_index, int k);

}  // namespace medqc
