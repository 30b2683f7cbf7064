#pragma once

#include <cstdint>

namespace survnn {

// Knobs for both training phases. Defaults follow the reference setup:
// learning rate 0.001 for pretraining, 0.0009 for fine-tuning.
struct TrainConfig {
    double pretrain_learning_rate = 0.001;
    double finetune_learning_rate = 0.0009;
    int pretrain_epochs = 30;
    int finetune_epochs = 200;
    double corruption_rate = 0.2;  // masking-noise probability, in [0,1)
    int minibatch_size_pretrain = 32;
    std::uint64_t rng_seed = 1;
    double l2_penalty = 0.0;  // weight decay on weight matrices, not biases

    // Throws InvalidInputError when a field is out of range.
    void validate() const;
};

// Default architecture: 2 hidden layers of 250 units.
inline constexpr int kDefaultHiddenLayers = 2;
inline constexpr int kDefaultHiddenUnits = 250;

}  // namespace survnn
