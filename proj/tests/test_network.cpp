#include <doctest.h>

#include <cmath>

#include "survnn/cox.hpp"
#include "survnn/errors.hpp"
#include "survnn/network.hpp"
#include "test_util.hpp"

using namespace survnn;
using namespace survnn::testutil;

namespace {

// Straight-line re-implementation of the forward pass with plain loops;
// oracle for the Eigen-based path.
std::vector<double> naive_forward_risk(const Network& net,
                                       const Eigen::MatrixXd& inputs) {
    std::vector<double> risks;
    for (Eigen::Index s = 0; s < inputs.rows(); ++s) {
        std::vector<double> act(inputs.cols());
        for (Eigen::Index j = 0; j < inputs.cols(); ++j) act[j] = inputs(s, j);
        for (const DenseLayer& layer : net.hidden) {
            std::vector<double> next(layer.fan_out());
            for (Eigen::Index r = 0; r < layer.fan_out(); ++r) {
                double z = layer.bias[r];
                for (Eigen::Index c = 0; c < layer.fan_in(); ++c) {
                    z += layer.weights(r, c) * act[c];
                }
                next[r] = activation_apply(layer.activation, z);
            }
            act = std::move(next);
        }
        double z = net.risk_head.bias[0];
        for (std::size_t c = 0; c < act.size(); ++c) {
            z += net.risk_head.weights(0, c) * act[c];
        }
        risks.push_back(z);
    }
    return risks;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("activations: fixed points and saturation") {
    CHECK(activation_apply(Activation::kSigmoid, 0.0) == 0.5);
    CHECK(activation_apply(Activation::kRelu, -1.0) == 0.0);
    CHECK(activation_apply(Activation::kRelu, 2.5) == 2.5);
    CHECK(activation_apply(Activation::kLinear, -3.25) == -3.25);
    CHECK(activation_apply(Activation::kSigmoid, 500.0) == 1.0);
    CHECK(activation_apply(Activation::kSigmoid, -500.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isfinite(activation_apply(Activation::kSigmoid, 710.0)));
    CHECK(std::isfinite(activation_apply(Activation::kSigmoid, -710.0)));
}

TEST_CASE("forward: identity layer plus selector head") {
    Network net;
    DenseLayer layer;
    layer.weights = Eigen::MatrixXd::Identity(4, 4);
    layer.bias = Eigen::VectorXd::Zero(4);
    layer.activation = Activation::kLinear;
    net.hidden.push_back(layer);
    net.risk_head.weights = Eigen::MatrixXd::Zero(1, 4);
    net.risk_head.weights(0, 0) = 1.0;
    net.risk_head.bias = Eigen::VectorXd::Zero(1);

    Eigen::MatrixXd input(1, 4);
    input << 3, -1, 2, 7;
    CHECK(predict_risk(net, input)[0] == 3.0);
}

TEST_CASE("forward: all-zero parameters give zero risk") {
    for (Activation act : {Activation::kSigmoid, Activation::kRelu}) {
        Network net;
        DenseLayer layer;
        layer.weights = Eigen::MatrixXd::Zero(3, 5);
        layer.bias = Eigen::VectorXd::Zero(3);
        layer.activation = act;
        net.hidden.push_back(layer);
        net.risk_head.weights = Eigen::MatrixXd::Zero(1, 3);
        net.risk_head.bias = Eigen::VectorXd::Zero(1);

        Rng rng(3);
        Eigen::MatrixXd input(6, 5);
        for (Eigen::Index i = 0; i < input.size(); ++i) {
            input.data()[i] = rng.normal();
        }
        CHECK(predict_risk(net, input).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("forward: matches straight-line recomputation") {
    Rng rng(99);
    Network net = make_network(6, {5, 3}, Activation::kSigmoid, rng);
    // Give the head nonzero weights so the oracle exercises it.
    for (Eigen::Index c = 0; c < 3; ++c) net.risk_head.weights(0, c) = 0.3 * (c + 1);
    net.risk_head.bias[0] = -0.2;

    Eigen::MatrixXd input(4, 6);
    for (Eigen::Index i = 0; i < input.size(); ++i) input.data()[i] = rng.normal();

    const RiskVector risk = predict_risk(net, input);
    const auto expected = naive_forward_risk(net, input);
    REQUIRE(risk.size() == 4);
    for (int s = 0; s < 4; ++s) {
        CHECK(risk[s] == doctest::Approx(expected[s]).epsilon(1e-12));
    }
}

TEST_CASE("forward: dimension mismatch rejected") {
    Rng rng(1);
    Network net = make_network(4, {3}, Activation::kRelu, rng);
    CHECK_THROWS_AS(predict_risk(net, Eigen::MatrixXd::Zero(2, 5)), InvalidInputError);
}

TEST_CASE("forward: non-finite input rejected") {
    Rng rng(1);
    Network net = make_network(2, {2}, Activation::kRelu, rng);
    Eigen::MatrixXd input = Eigen::MatrixXd::Zero(1, 2);
    input(0, 1) = std::nan("");
    CHECK_THROWS_AS(predict_risk(net, input), InvalidInputError);
}

TEST_CASE("predict_risk: permuting rows permutes risks") {
    Rng rng(5);
    Network net = make_network(3, {4}, Activation::kSigmoid, rng);
    for (Eigen::Index c = 0; c < 4; ++c) net.risk_head.weights(0, c) = rng.normal();

    Eigen::MatrixXd input(5, 3);
    for (Eigen::Index i = 0; i < input.size(); ++i) input.data()[i] = rng.normal();
    const RiskVector risk = predict_risk(net, input);

    Eigen::MatrixXd reversed = input.colwise().reverse();
    const RiskVector risk_rev = predict_risk(net, reversed);
    CHECK(risk_rev.reverse().isApprox(risk, 0.0));

    // Duplicate rows yield duplicate risks.
    Eigen::MatrixXd doubled(2, 3);
    doubled.row(0) = input.row(2);
    doubled.row(1) = input.row(2);
    const RiskVector risk_dup = predict_risk(net, doubled);
    CHECK(risk_dup[0] == risk_dup[1]);
}

TEST_CASE("risk head is linear in its input") {
    Rng rng(8);
    DenseLayer head = make_dense_layer(1, 6, Activation::kLinear, rng);
    head.bias[0] = 0.0;  // bias-free head
    Eigen::MatrixXd h1(1, 6), h2(1, 6);
    for (int j = 0; j < 6; ++j) {
        h1(0, j) = rng.normal();
        h2(0, j) = rng.normal();
    }
    const double a = 1.7, b = -0.4;
    const double lhs = head.apply(a * h1 + b * h2)(0, 0);
    const double rhs = a * head.apply(h1)(0, 0) + b * head.apply(h2)(0, 0);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("initialization is deterministic per seed") {
    Rng rng_a(123), rng_b(123), rng_c(124);
    const Network a = make_network(7, {5, 4}, Activation::kRelu, rng_a);
    const Network b = make_network(7, {5, 4}, Activation::kRelu, rng_b);
    const Network c = make_network(7, {5, 4}, Activation::kRelu, rng_c);
    CHECK(a.hidden[0].weights == b.hidden[0].weights);
    CHECK(a.hidden[1].weights == b.hidden[1].weights);
    CHECK(a.hidden[0].weights != c.hidden[0].weights);
    // Head starts at zero: every sample scores 0 (null model).
    CHECK(a.risk_head.weights.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("backprop: whole-network gradient matches finite differences") {
    Rng rng(21);
    for (Activation act : {Activation::kSigmoid, Activation::kRelu, Activation::kLinear}) {
        Network net = make_network(3, {2}, act, rng);
        // Nonzero head so the hidden layers receive signal.
        for (Eigen::Index c = 0; c < 2; ++c) net.risk_head.weights(0, c) = rng.normal();
        net.risk_head.bias[0] = 0.1;

        const int n = 8;
        Eigen::MatrixXd inputs(n, 3);
        for (Eigen::Index i = 0; i < inputs.size(); ++i) inputs.data()[i] = rng.normal();
        const auto labels = random_labels(rng, n, 0.25, false);
        if (labels.num_events() == 0) continue;

        const ForwardCache cache = forward(net, inputs);
        const auto lg = cox_loss_and_gradient(cache.risk, labels);
        const NetworkGrads grads = backprop_risk_gradient(net, cache, lg.grad);

        auto loss_of = [&](Network& m) {
            return neg_log_partial_likelihood(predict_risk(m, inputs), labels);
        };
        const double h = 1e-5;
        auto check_param = [&](double& param, double analytic) {
            const double orig = param;
            param = orig + h;
            const double up = loss_of(net);
            param = orig - h;
            const double down = loss_of(net);
            param = orig;
            const double fd = (up - down) / (2 * h);
            CHECK(std::abs(analytic - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
        };

        for (std::size_t k = 0; k < net.hidden.size(); ++k) {
            for (Eigen::Index i = 0; i < net.hidden[k].weights.size(); ++i) {
                check_param(net.hidden[k].weights.data()[i],
                            grads.hidden[k].weights.data()[i]);
            }
            for (Eigen::Index i = 0; i < net.hidden[k].bias.size(); ++i) {
                check_param(net.hidden[k].bias[i], grads.hidden[k].bias[i]);
            }
        }
        for (Eigen::Index i = 0; i < net.risk_head.weights.size(); ++i) {
            check_param(net.risk_head.weights.data()[i], grads.head.weights.data()[i]);
        }
        check_param(net.risk_head.bias[0], grads.head.bias[0]);
    }
}

}  // TEST_SUITE
