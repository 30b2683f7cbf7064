#include "survnn/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survnn/errors.hpp"

namespace survnn {

void TrainConfig::validate() const {
    if (!(pretrain_learning_rate > 0.0) || !(finetune_learning_rate > 0.0)) {
        throw InvalidInputError("train config: learning rates must be positive");
    }
    if (pretrain_epochs < 0 || finetune_epochs < 0) {
        throw InvalidInputError("train config: epoch counts must be nonnegative");
    }
    if (!(corruption_rate >= 0.0 && corruption_rate < 1.0)) {
        throw InvalidInputError("train config: corruption_rate must be in [0,1)");
    }
    if (minibatch_size_pretrain < 1) {
        throw InvalidInputError("train config: minibatch size must be positive");
    }
    if (l2_penalty < 0.0) {
        throw InvalidInputError("train config: l2_penalty must be nonnegative");
    }
}

Eigen::MatrixXd corrupt(const Eigen::MatrixXd& inputs, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw InvalidInputError("corrupt: rate must be in [0,1)");
    }
    Eigen::MatrixXd out = inputs;
    if (rate == 0.0) return out;
    // Row-major scan so corruption is per sample, then per feature.
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            if (rng.uniform() < rate) out(i, j) = 0.0;
        }
    }
    return out;
}

double reconstruction_mse(const DenseLayer& encoder, const DenseLayer& decoder,
                          const Eigen::MatrixXd& inputs) {
    const Eigen::MatrixXd recon = decoder.apply(encoder.apply(inputs));
    return (recon - inputs).squaredNorm() /
           static_cast<double>(inputs.rows() * inputs.cols());
}

PretrainResult pretrain_layer(const DenseLayer& layer,
                              const Eigen::MatrixXd& inputs,
                              const TrainConfig& config, Rng& rng) {
    config.validate();
    if (inputs.cols() != layer.fan_in()) {
        throw InvalidInputError("pretrain_layer: input width mismatch");
    }
    const int n = static_cast<int>(inputs.rows());
    const int p = static_cast<int>(inputs.cols());

    PretrainResult result;
    result.encoder = layer;
    result.decoder = make_dense_layer(p, static_cast<int>(layer.fan_out()),
                                      Activation::kLinear, rng);

    const double lr = config.pretrain_learning_rate;
    const int batch_size = std::min(config.minibatch_size_pretrain, n);

    std::vector<int> index(n);
    std::iota(index.begin(), index.end(), 0);

    for (int epoch = 0; epoch < config.pretrain_epochs; ++epoch) {
        rng.shuffle(index);
        double epoch_loss = 0.0;
        int num_batches = 0;
        for (int start = 0; start < n; start += batch_size) {
            const int size = std::min(batch_size, n - start);
            Eigen::MatrixXd clean(size, p);
            for (int r = 0; r < size; ++r) clean.row(r) = inputs.row(index[start + r]);
            const Eigen::MatrixXd noisy = corrupt(clean, config.corruption_rate, rng);

            // Forward: code = enc(noisy), recon = dec(code); loss is the MSE
            // over every entry of the batch.
            const Eigen::MatrixXd code = result.encoder.apply(noisy);
            const Eigen::MatrixXd recon = result.decoder.apply(code);
            const Eigen::MatrixXd err = recon - clean;
            const double denom = static_cast<double>(size) * p;
            epoch_loss += err.squaredNorm() / denom;
            ++num_batches;

            // Backward. Decoder is linear: d(recon) = 2 err / denom.
            const Eigen::MatrixXd d_recon = (2.0 / denom) * err;
            LayerGrads dec_grads;
            dec_grads.weights = d_recon.transpose() * code;
            dec_grads.bias = d_recon.colwise().sum().transpose();

            Eigen::MatrixXd d_code = d_recon * result.decoder.weights;
            for (Eigen::Index j = 0; j < d_code.size(); ++j) {
                d_code.data()[j] *= activation_derivative_from_value(
                    result.encoder.activation, code.data()[j]);
            }
            LayerGrads enc_grads;
            enc_grads.weights = d_code.transpose() * noisy;
            enc_grads.bias = d_code.colwise().sum().transpose();

            if (config.l2_penalty > 0.0) {
                dec_grads.weights += config.l2_penalty * result.decoder.weights;
                enc_grads.weights += config.l2_penalty * result.encoder.weights;
            }
            result.decoder.weights -= lr * dec_grads.weights;
            result.decoder.bias -= lr * dec_grads.bias;
            result.encoder.weights -= lr * enc_grads.weights;
            result.encoder.bias -= lr * enc_grads.bias;
        }
        epoch_loss /= num_batches;
        if (!std::isfinite(epoch_loss)) {
            throw DivergenceError("pretrain_layer: non-finite loss at epoch " +
                                  std::to_string(epoch));
        }
        result.loss_trace.push_back(epoch_loss);
    }
    return result;
}

Network stacked_pretrain(const Network& net, const Eigen::MatrixXd& inputs,
                         const TrainConfig& config, Rng& rng) {
    net.validate();
    Network out = net;
    Eigen::MatrixXd codes = inputs;
    for (std::size_t k = 0; k < out.hidden.size(); ++k) {
        PretrainResult trained = pretrain_layer(out.hidden[k], codes, config, rng);
        out.hidden[k] = trained.encoder;
        codes = out.hidden[k].apply(codes);
    }
    return out;
}

}  // namespace survnn
