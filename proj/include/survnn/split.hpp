#pragma once

#include <cstdint>
#include <vector>

namespace survnn {

// Seeded 70/15/15 partition of 0..n-1: a uniform permutation, then the
// first floor(0.7 n) indices train, ceil of half the remainder validation,
// the rest test.
struct SplitPlan {
    std::uint64_t permutation_seed = 0;
    std::vector<int> train;
    std::vector<int> validation;
    std::vector<int> test;
};

// Requires n >= 10.
SplitPlan make_split(int n, std::uint64_t seed);

}  // namespace survnn
