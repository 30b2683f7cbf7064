#include "survnn/finetune.hpp"

#include <cmath>
#include <limits>

#include "survnn/cox.hpp"
#include "survnn/errors.hpp"

namespace survnn {

namespace {

// Validation concordance of the current parameters; NaN when the metric is
// undefined (no orderable pairs).
double validation_ci(const Network& net, const ValidationData& val) {
    try {
        return concordance_index(predict_risk(net, val.features), val.labels);
    } catch (const UndefinedMetricError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

FinetuneResult finetune_cox(const Network& net, const Eigen::MatrixXd& inputs,
                            const SurvivalLabels& labels, const TrainConfig& config,
                            const std::optional<ValidationData>& validation) {
    config.validate();
    net.validate();
    labels.validate();
    if (inputs.rows() != labels.size()) {
        throw InvalidInputError("finetune_cox: sample count mismatch");
    }
    if (labels.num_events() == 0) {
        throw UndefinedLossError(
            "finetune_cox: no uncensored samples in the training set");
    }

    FinetuneResult result;
    result.network = net;
    result.best_validation_ci = std::numeric_limits<double>::quiet_NaN();

    Network best = net;
    if (validation) {
        result.best_validation_ci = validation_ci(net, *validation);
    }

    const double lr = config.finetune_learning_rate;
    for (int epoch = 0; epoch < config.finetune_epochs; ++epoch) {
        const ForwardCache cache = forward(result.network, inputs);
        if (!cache.risk.allFinite()) {
            throw DivergenceError("finetune_cox: non-finite risk at epoch " +
                                  std::to_string(epoch));
        }
        const CoxLossGrad lg = cox_loss_and_gradient(cache.risk, labels);
        if (!std::isfinite(lg.loss)) {
            throw DivergenceError("finetune_cox: non-finite loss at epoch " +
                                  std::to_string(epoch));
        }
        NetworkGrads grads = backprop_risk_gradient(result.network, cache, lg.grad);

        for (std::size_t k = 0; k < result.network.hidden.size(); ++k) {
            DenseLayer& layer = result.network.hidden[k];
            if (config.l2_penalty > 0.0) {
                grads.hidden[k].weights += config.l2_penalty * layer.weights;
            }
            layer.weights -= lr * grads.hidden[k].weights;
            layer.bias -= lr * grads.hidden[k].bias;
        }
        if (config.l2_penalty > 0.0) {
            grads.head.weights += config.l2_penalty * result.network.risk_head.weights;
        }
        result.network.risk_head.weights -= lr * grads.head.weights;
        result.network.risk_head.bias -= lr * grads.head.bias;

        FinetuneEpoch entry;
        entry.train_loss = lg.loss;
        entry.validation_ci = std::numeric_limits<double>::quiet_NaN();
        if (validation) {
            entry.validation_ci = validation_ci(result.network, *validation);
            // An undefined (NaN) incumbent loses to any real CI; an undefined
            // candidate never wins.
            if (std::isfinite(entry.validation_ci) &&
                !(entry.validation_ci <= result.best_validation_ci)) {
                result.best_validation_ci = entry.validation_ci;
                best = result.network;
            }
        }
        result.history.push_back(entry);
    }

    if (validation) result.network = best;
    return result;
}

}  // namespace survnn
