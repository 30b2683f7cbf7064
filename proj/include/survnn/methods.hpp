#pragma once

#include "survnn/config.hpp"
#include "survnn/coxnet.hpp"
#include "survnn/harness.hpp"
#include "survnn/network.hpp"
#include "survnn/train_config.hpp"

namespace survnn {

// Elastic-net Cox baseline; tunes lambda (log scale) and alpha. Among trials
// within kCiSlack of the best validation CI the largest lambda wins, so the
// selected model is the sparsest one that is not measurably worse.
class CoxnetMethod : public Method {
public:
    static constexpr double kCiSlack = 0.005;

    explicit CoxnetMethod(CoxnetOptions options = {}, double default_lambda = 0.01,
                          double default_alpha = 0.5);

    std::string name() const override { return "coxnet"; }
    ParamSpace search_space() const override;
    TunedParams params_from_point(const std::vector<double>& point) const override;
    TunedParams default_params() const override;
    std::unique_ptr<FittedPredictor> fit(const DataSlice& train,
                                         const DataSlice& validation,
                                         const TunedParams& params,
                                         std::uint64_t fit_seed) const override;
    TunedParams tune(const DataSlice& train, const DataSlice& validation,
                     int budget, int init_trials, std::uint64_t seed,
                     const std::function<void(const Trial&)>& on_trial) const override;

private:
    CoxnetOptions options_;
    double default_lambda_;
    double default_alpha_;
};

// Pretrained-then-finetuned dense network with a fixed activation. Tunes
// depth, width, both learning rates and the corruption rate; epoch counts
// and the minibatch size come from the base TrainConfig.
class NnMethod : public Method {
public:
    NnMethod(Activation activation, TrainConfig base_config,
             int default_layers = kDefaultHiddenLayers,
             int default_units = kDefaultHiddenUnits);

    std::string name() const override;
    ParamSpace search_space() const override;
    TunedParams params_from_point(const std::vector<double>& point) const override;
    TunedParams default_params() const override;
    std::unique_ptr<FittedPredictor> fit(const DataSlice& train,
                                         const DataSlice& validation,
                                         const TunedParams& params,
                                         std::uint64_t fit_seed) const override;

    // Fit without the pretraining stage (random initialization), same
    // fine-tuning; used for the pretraining-benefit comparison.
    std::unique_ptr<FittedPredictor> fit_without_pretraining(
        const DataSlice& train, const DataSlice& validation,
        const TunedParams& params, std::uint64_t fit_seed) const;

private:
    std::unique_ptr<FittedPredictor> fit_impl(const DataSlice& train,
                                              const DataSlice& validation,
                                              const TunedParams& params,
                                              std::uint64_t fit_seed,
                                              bool pretrain) const;

    Activation activation_;
    TrainConfig base_;
    int default_layers_;
    int default_units_;
};

// kind: "coxnet", "nn-sigmoid" or "nn-relu", configured from the app config.
std::shared_ptr<Method> make_method(const std::string& kind, const AppConfig& config);

}  // namespace survnn
