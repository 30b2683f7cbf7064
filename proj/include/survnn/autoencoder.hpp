#pragma once

#include <Eigen/Core>
#include <vector>

#include "survnn/network.hpp"
#include "survnn/train_config.hpp"

namespace survnn {

// Masking noise: each entry is zeroed independently with probability rate.
Eigen::MatrixXd corrupt(const Eigen::MatrixXd& inputs, double rate, Rng& rng);

struct PretrainResult {
    DenseLayer encoder;
    DenseLayer decoder;             // untied, linear output; discarded after stacking
    std::vector<double> loss_trace; // mean reconstruction MSE per epoch
};

// Denoising-autoencoder pretraining of one layer: minibatch SGD on the mean
// squared error of reconstructing clean inputs from corrupted ones.
// Throws DivergenceError (naming the epoch) if the loss turns non-finite.
PretrainResult pretrain_layer(const DenseLayer& layer,
                              const Eigen::MatrixXd& inputs,
                              const TrainConfig& config, Rng& rng);

// Greedy layer-wise pretraining of the hidden stack: layer k is trained to
// reconstruct the (clean) codes produced by layers 0..k-1. The risk head is
// left untouched.
Network stacked_pretrain(const Network& net, const Eigen::MatrixXd& inputs,
                         const TrainConfig& config, Rng& rng);

// Mean squared reconstruction error per matrix entry.
double reconstruction_mse(const DenseLayer& encoder, const DenseLayer& decoder,
                          const Eigen::MatrixXd& inputs);

}  // namespace survnn
