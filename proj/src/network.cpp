#include "survnn/network.hpp"

#include <cmath>

#include "survnn/errors.hpp"

namespace survnn {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::kSigmoid: return "sigmoid";
        case Activation::kRelu: return "relu";
        case Activation::kLinear: return "linear";
    }
    return "linear";
}

Activation activation_from_name(const std::string& name) {
    if (name == "sigmoid") return Activation::kSigmoid;
    if (name == "relu") return Activation::kRelu;
    if (name == "linear") return Activation::kLinear;
    throw InvalidInputError("unknown activation: " + name);
}

double activation_apply(Activation kind, double x) {
    switch (kind) {
        case Activation::kSigmoid:
            if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
            {
                const double e = std::exp(x);
                return e / (1.0 + e);
            }
        case Activation::kRelu:
            return x > 0.0 ? x : 0.0;
        case Activation::kLinear:
            return x;
    }
    return x;
}

double activation_derivative_from_value(Activation kind, double a) {
    switch (kind) {
        case Activation::kSigmoid: return a * (1.0 - a);
        case Activation::kRelu: return a > 0.0 ? 1.0 : 0.0;
        case Activation::kLinear: return 1.0;
    }
    return 1.0;
}

Eigen::MatrixXd DenseLayer::apply(const Eigen::MatrixXd& inputs) const {
    if (inputs.cols() != fan_in()) {
        throw InvalidInputError("dense layer: input width " +
                                std::to_string(inputs.cols()) +
                                " does not match fan_in " +
                                std::to_string(fan_in()));
    }
    Eigen::MatrixXd z = inputs * weights.transpose();
    z.rowwise() += bias.transpose();
    if (activation != Activation::kLinear) {
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            z.data()[j] = activation_apply(activation, z.data()[j]);
        }
    }
    return z;
}

DenseLayer make_dense_layer(int fan_out, int fan_in, Activation activation,
                            Rng& rng) {
    double bound = std::sqrt(6.0 / (fan_in + fan_out));
    if (activation == Activation::kRelu) bound *= std::sqrt(2.0);
    DenseLayer layer;
    layer.activation = activation;
    layer.weights.resize(fan_out, fan_in);
    for (Eigen::Index r = 0; r < fan_out; ++r) {
        for (Eigen::Index c = 0; c < fan_in; ++c) {
            layer.weights(r, c) = rng.uniform(-bound, bound);
        }
    }
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    return layer;
}

void Network::validate() const {
    Eigen::Index width = input_width();
    for (std::size_t k = 0; k < hidden.size(); ++k) {
        if (hidden[k].fan_in() != width) {
            throw InvalidInputError("network: hidden layer " + std::to_string(k) +
                                    " fan_in mismatch");
        }
        if (hidden[k].bias.size() != hidden[k].fan_out()) {
            throw InvalidInputError("network: hidden layer " + std::to_string(k) +
                                    " bias size mismatch");
        }
        width = hidden[k].fan_out();
    }
    if (risk_head.fan_in() != width) {
        throw InvalidInputError("network: risk head fan_in mismatch");
    }
    if (risk_head.fan_out() != 1 || risk_head.bias.size() != 1) {
        throw InvalidInputError("network: risk head must have exactly one output");
    }
    if (risk_head.activation != Activation::kLinear) {
        throw InvalidInputError("network: risk head must be linear");
    }
}

Network make_network(int input_width, const std::vector<int>& hidden_widths,
                     Activation activation, Rng& rng) {
    Network net;
    int width = input_width;
    for (int w : hidden_widths) {
        net.hidden.push_back(make_dense_layer(w, width, activation, rng));
        width = w;
    }
    net.risk_head.activation = Activation::kLinear;
    net.risk_head.weights = Eigen::MatrixXd::Zero(1, width);
    net.risk_head.bias = Eigen::VectorXd::Zero(1);
    return net;
}

ForwardCache forward(const Network& net, const Eigen::MatrixXd& inputs) {
    net.validate();
    if (inputs.cols() != net.input_width()) {
        throw InvalidInputError("forward: input width " +
                                std::to_string(inputs.cols()) +
                                " does not match network input width " +
                                std::to_string(net.input_width()));
    }
    for (Eigen::Index j = 0; j < inputs.size(); ++j) {
        if (!std::isfinite(inputs.data()[j])) {
            throw InvalidInputError("forward: non-finite input value");
        }
    }
    ForwardCache cache;
    cache.activations.reserve(net.hidden.size() + 1);
    cache.activations.push_back(inputs);
    for (const DenseLayer& layer : net.hidden) {
        cache.activations.push_back(layer.apply(cache.activations.back()));
    }
    cache.risk = net.risk_head.apply(cache.activations.back()).col(0);
    return cache;
}

RiskVector predict_risk(const Network& net, const Eigen::MatrixXd& inputs) {
    return forward(net, inputs).risk;
}

NetworkGrads backprop_risk_gradient(const Network& net, const ForwardCache& cache,
                                    const Eigen::VectorXd& risk_grad) {
    const Eigen::MatrixXd& top = cache.activations.back();
    NetworkGrads grads;
    grads.head.weights = risk_grad.transpose() * top;  // 1 x width
    grads.head.bias = Eigen::VectorXd::Constant(1, risk_grad.sum());

    // d(loss)/d(activation) flowing down from the head.
    Eigen::MatrixXd delta = risk_grad * net.risk_head.weights;  // n x width
    grads.hidden.resize(net.hidden.size());
    for (int k = static_cast<int>(net.hidden.size()) - 1; k >= 0; --k) {
        const DenseLayer& layer = net.hidden[k];
        const Eigen::MatrixXd& out = cache.activations[k + 1];
        for (Eigen::Index j = 0; j < delta.size(); ++j) {
            delta.data()[j] *= activation_derivative_from_value(layer.activation,
                                                                out.data()[j]);
        }
        grads.hidden[k].weights = delta.transpose() * cache.activations[k];
        grads.hidden[k].bias = delta.colwise().sum().transpose();
        if (k > 0) delta = (delta * layer.weights).eval();
    }
    return grads;
}

}  // namespace survnn
