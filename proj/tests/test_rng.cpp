#include <doctest.h>

#include <algorithm>
#include <set>

#include "medqc/rng.hpp"

using medqc::Rng;

TEST_CASE("identical seeds give identical streams") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("next_unit stays in [0,1)") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below stays in range and hits every value") {
    Rng rng(9);
    std::set<uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        uint64_t v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("shuffle is a permutation") {
    Rng rng(11);
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[i] = i;
    std::vector<int> shuffled = v;
    rng.shuffle(shuffled);
    CHECK(shuffled != v);  // astronomically unlikely to be identity
    std::sort(shuffled.begin(), shuffled.end());
    CHECK(shuffled == v);
}

TEST_CASE("mix64 derives distinct streams") {
    CHECK(medqc::mix64(1, 0) != medqc::mix64(1, 1));
    CHECK(medqc::mix64(1, 0) != medqc::mix64(2, 0));
}
