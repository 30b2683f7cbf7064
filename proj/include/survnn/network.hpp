#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "survnn/labels.hpp"
#include "survnn/rng.hpp"

namespace survnn {

enum class Activation { kSigmoid, kRelu, kLinear };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// Elementwise activation. Sigmoid uses the sign-split form so large |x|
// saturates instead of overflowing.
double activation_apply(Activation kind, double x);

// Derivative expressed through the activation value a = act(x):
// sigmoid a(1-a), relu 1[a > 0], linear 1.
double activation_derivative_from_value(Activation kind, double a);

// Fully connected layer, weights are fan_out x fan_in; data is row-major
// by sample (inputs n x fan_in -> outputs n x fan_out).
struct DenseLayer {
    Eigen::MatrixXd weights;
    Eigen::VectorXd bias;
    Activation activation = Activation::kLinear;

    Eigen::Index fan_in() const { return weights.cols(); }
    Eigen::Index fan_out() const { return weights.rows(); }

    Eigen::MatrixXd apply(const Eigen::MatrixXd& inputs) const;
};

// Variance-preserving uniform init: +/- sqrt(6/(fan_in+fan_out)) for sigmoid
// and linear layers, scaled by sqrt(2) for relu.
DenseLayer make_dense_layer(int fan_out, int fan_in, Activation activation,
                            Rng& rng);

// Hidden stack plus a single-output linear risk head.
struct Network {
    std::vector<DenseLayer> hidden;
    DenseLayer risk_head;

    Eigen::Index input_width() const {
        return hidden.empty() ? risk_head.fan_in() : hidden.front().fan_in();
    }

    // Dimension chain and head shape (1 output, linear). Throws
    // InvalidInputError on violation.
    void validate() const;
};

// Fresh network: hidden widths as given, risk head zero-initialized so the
// initial risk is 0 for every sample (null model).
Network make_network(int input_width, const std::vector<int>& hidden_widths,
                     Activation activation, Rng& rng);

struct ForwardCache {
    // activations[0] is the input; activations[k] the output of hidden
    // layer k. Kept for backprop.
    std::vector<Eigen::MatrixXd> activations;
    RiskVector risk;
};

ForwardCache forward(const Network& net, const Eigen::MatrixXd& inputs);

// Forward pass without caching.
RiskVector predict_risk(const Network& net, const Eigen::MatrixXd& inputs);

struct LayerGrads {
    Eigen::MatrixXd weights;
    Eigen::VectorXd bias;
};

struct NetworkGrads {
    std::vector<LayerGrads> hidden;
    LayerGrads head;
};

// Backpropagates d(loss)/d(risk) through the head and every hidden layer.
NetworkGrads backprop_risk_gradient(const Network& net, const ForwardCache& cache,
                                    const Eigen::VectorXd& risk_grad);

}  // namespace survnn
