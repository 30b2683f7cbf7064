#pragma once

#include <string>

#include "survnn/network.hpp"
#include "survnn/synthetic.hpp"
#include "survnn/train_config.hpp"

namespace survnn {

// Line-oriented key=value configuration with one section per module.
// Unknown sections or keys are errors; '#' starts a comment.
struct AppConfig {
    // [nn]
    int nn_hidden_layers = kDefaultHiddenLayers;
    int nn_hidden_units = kDefaultHiddenUnits;
    Activation nn_activation = Activation::kRelu;
    TrainConfig train;

    // [coxnet]
    double coxnet_lambda = 0.01;
    double coxnet_alpha = 0.5;
    double coxnet_tol = 1e-7;
    int coxnet_max_iter = 10000;
    bool coxnet_standardize = true;

    // [synthetic]
    SyntheticSpec synthetic;

    // [tune]
    int tune_budget = 40;
    int tune_init_trials = 10;

    // [benchmark]
    int benchmark_permutations = 10;
    std::uint64_t benchmark_base_seed = 1;
};

AppConfig parse_config_text(const std::string& text);
AppConfig load_config_file(const std::string& path);

// Full dump (every key in every section); parses back to the same values.
std::string config_to_text(const AppConfig& config);
void save_config_file(const AppConfig& config, const std::string& path);

}  // namespace survnn
