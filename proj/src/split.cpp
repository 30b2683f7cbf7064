#include "survnn/split.hpp"

#include <numeric>

#include "survnn/errors.hpp"
#include "survnn/rng.hpp"

namespace survnn {

SplitPlan make_split(int n, std::uint64_t seed) {
    if (n < 10) {
        throw InvalidInputError("make_split: need at least 10 samples, got " +
                                std::to_string(n));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    // Integer arithmetic: floor(0.7 n) and ceil(remainder / 2) exactly.
    const int train_size = (7 * n) / 10;
    const int val_size = (n - train_size + 1) / 2;

    SplitPlan plan;
    plan.permutation_seed = seed;
    plan.train.assign(order.begin(), order.begin() + train_size);
    plan.validation.assign(order.begin() + train_size,
                           order.begin() + train_size + val_size);
    plan.test.assign(order.begin() + train_size + val_size, order.end());
    return plan;
}

}  // namespace survnn
