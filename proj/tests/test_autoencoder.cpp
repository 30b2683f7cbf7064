#include <doctest.h>

#include <cmath>

#include "survnn/autoencoder.hpp"
#include "survnn/errors.hpp"
#include "test_util.hpp"

using namespace survnn;
using namespace survnn::testutil;

namespace {

Eigen::MatrixXd low_rank_data(Rng& rng, int n, int p, int rank) {
    Eigen::MatrixXd u(n, rank), v(rank, p);
    for (Eigen::Index i = 0; i < u.size(); ++i) u.data()[i] = rng.normal();
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = rng.normal();
    return u * v / std::sqrt(static_cast<double>(rank));
}

}  // namespace

TEST_SUITE("autoencoder") {

TEST_CASE("corrupt: rate zero is the identity") {
    Rng rng(1);
    Eigen::MatrixXd x(3, 4);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = rng.normal();
    CHECK(corrupt(x, 0.0, rng) == x);
}

TEST_CASE("corrupt: masking fraction concentrates around the rate") {
    Rng rng(2);
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(1000, 100);
    const Eigen::MatrixXd noisy = corrupt(ones, 0.3, rng);
    const double zero_fraction =
        1.0 - noisy.sum() / static_cast<double>(ones.size());
    CHECK(zero_fraction == doctest::Approx(0.3).epsilon(0.02 / 0.3));
}

TEST_CASE("corrupt: deterministic under the seed") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(20, 20);
    Rng rng_a(77), rng_b(77);
    CHECK(corrupt(x, 0.4, rng_a) == corrupt(x, 0.4, rng_b));
}

TEST_CASE("corrupt: rate one rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(corrupt(Eigen::MatrixXd::Ones(2, 2), 1.0, rng),
                    InvalidInputError);
}

TEST_CASE("pretrain_layer: reconstruction improves on rank-limited data") {
    Rng rng(5);
    const Eigen::MatrixXd data = low_rank_data(rng, 200, 10, 3);

    TrainConfig config;
    config.corruption_rate = 0.0;
    config.pretrain_epochs = 200;
    config.pretrain_learning_rate = 0.02;
    config.minibatch_size_pretrain = 32;

    Rng init_rng(6);
    DenseLayer layer = make_dense_layer(10, 10, Activation::kSigmoid, init_rng);
    Rng train_rng(7);

    // Initial MSE measured against a decoder initialized the same way the
    // training run initializes its own.
    Rng probe_rng(7);
    DenseLayer probe_decoder = make_dense_layer(10, 10, Activation::kLinear, probe_rng);
    const double initial = reconstruction_mse(layer, probe_decoder, data);

    const PretrainResult result = pretrain_layer(layer, data, config, train_rng);
    const double final_mse = reconstruction_mse(result.encoder, result.decoder, data);

    CHECK(final_mse < 0.2 * initial);
    CHECK(final_mse < result.loss_trace.front());
    CHECK(static_cast<int>(result.loss_trace.size()) == config.pretrain_epochs);
}

TEST_CASE("pretrain_layer: zero epochs returns the layer untouched") {
    Rng rng(9);
    DenseLayer layer = make_dense_layer(4, 6, Activation::kSigmoid, rng);
    Eigen::MatrixXd data(12, 6);
    for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = rng.normal();

    TrainConfig config;
    config.pretrain_epochs = 0;
    const PretrainResult result = pretrain_layer(layer, data, config, rng);
    CHECK(result.encoder.weights == layer.weights);
    CHECK(result.encoder.bias == layer.bias);
    CHECK(result.loss_trace.empty());
}

TEST_CASE("pretrain_layer: unstable step size diverges with the epoch named") {
    Rng rng(10);
    DenseLayer layer = make_dense_layer(8, 8, Activation::kSigmoid, rng);
    Eigen::MatrixXd data(64, 8);
    for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = 3.0 * rng.normal();

    TrainConfig config;
    config.pretrain_learning_rate = 1e3;
    config.pretrain_epochs = 50;
    CHECK_THROWS_WITH_AS(pretrain_layer(layer, data, config, rng),
                         doctest::Contains("epoch"), DivergenceError);
}

TEST_CASE("stacked_pretrain: no hidden layers is a no-op") {
    Network net;
    net.risk_head.weights = Eigen::MatrixXd::Zero(1, 5);
    net.risk_head.bias = Eigen::VectorXd::Zero(1);
    Rng rng(11);
    Eigen::MatrixXd data = Eigen::MatrixXd::Ones(10, 5);
    TrainConfig config;
    config.pretrain_epochs = 5;
    const Network out = stacked_pretrain(net, data, config, rng);
    CHECK(out.hidden.empty());
    CHECK(out.risk_head.weights == net.risk_head.weights);
}

TEST_CASE("stacked_pretrain: preserves shapes and keeps parameters finite") {
    Rng rng(12);
    Network net = make_network(20, {12, 7}, Activation::kSigmoid, rng);
    Eigen::MatrixXd data(60, 20);
    for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = rng.normal();

    TrainConfig config;
    config.pretrain_epochs = 10;
    Rng train_rng(13);
    const Network out = stacked_pretrain(net, data, config, train_rng);

    REQUIRE(out.hidden.size() == 2);
    CHECK(out.hidden[0].weights.rows() == 12);
    CHECK(out.hidden[0].weights.cols() == 20);
    CHECK(out.hidden[1].weights.rows() == 7);
    CHECK(out.hidden[1].weights.cols() == 12);
    for (const DenseLayer& layer : out.hidden) {
        CHECK(layer.weights.allFinite());
        CHECK(layer.bias.allFinite());
    }
    // Risk head is not pretrained.
    CHECK(out.risk_head.weights == net.risk_head.weights);
    // Pretraining moved the encoders.
    CHECK(out.hidden[0].weights != net.hidden[0].weights);
    CHECK(out.hidden[1].weights != net.hidden[1].weights);
}

TEST_CASE("stacked_pretrain: deterministic under config seed") {
    Rng rng(14);
    Network net = make_network(9, {6, 4}, Activation::kRelu, rng);
    Eigen::MatrixXd data(40, 9);
    for (Eigen::Index i = 0; i < data.size(); ++i) data.data()[i] = rng.normal();

    TrainConfig config;
    config.pretrain_epochs = 4;
    Rng a(config.rng_seed), b(config.rng_seed);
    const Network out_a = stacked_pretrain(net, data, config, a);
    const Network out_b = stacked_pretrain(net, data, config, b);
    CHECK(out_a.hidden[0].weights == out_b.hidden[0].weights);
    CHECK(out_a.hidden[1].weights == out_b.hidden[1].weights);
    CHECK(out_a.hidden[1].bias == out_b.hidden[1].bias);
}

}  // TEST_SUITE
