#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "survnn/labels.hpp"
#include "survnn/network.hpp"
#include "survnn/train_config.hpp"

namespace survnn {

struct ValidationData {
    Eigen::MatrixXd features;
    SurvivalLabels labels;
};

struct FinetuneEpoch {
    double train_loss;    // Cox loss at the start of the epoch, pre-update
    double validation_ci; // CI after the epoch's update; NaN without validation
};

struct FinetuneResult {
    Network network;
    std::vector<FinetuneEpoch> history;
    double best_validation_ci;  // NaN without validation
};

// Full-batch gradient descent on the Cox negative log partial likelihood of
// the network's risk output. With validation data, keeps the parameters that
// achieved the best validation concordance (the initial parameters count).
// Throws UndefinedLossError when the training set has no uncensored sample
// and DivergenceError when the loss turns non-finite.
FinetuneResult finetune_cox(const Network& net, const Eigen::MatrixXd& inputs,
                            const SurvivalLabels& labels, const TrainConfig& config,
                            const std::optional<ValidationData>& validation = {});

}  // namespace survnn
