#include "survnn/methods.hpp"

#include <cmath>

#include "survnn/autoencoder.hpp"
#include "survnn/errors.hpp"
#include "survnn/finetune.hpp"
#include "survnn/serialize.hpp"

namespace survnn {

namespace {

class CoxnetPredictor : public FittedPredictor {
public:
    explicit CoxnetPredictor(ElasticNetCoxModel model) : model_(std::move(model)) {}

    RiskVector predict(const Eigen::MatrixXd& features) const override {
        return predict_linear_risk(model_, features);
    }
    std::string serialize(const std::optional<FeatureScaler>& scaler) const override {
        return serialize_coxnet(model_, scaler);
    }

private:
    ElasticNetCoxModel model_;
};

class NnPredictor : public FittedPredictor {
public:
    explicit NnPredictor(Network net) : net_(std::move(net)) {}

    RiskVector predict(const Eigen::MatrixXd& features) const override {
        return predict_risk(net_, features);
    }
    std::string serialize(const std::optional<FeatureScaler>& scaler) const override {
        return serialize_network(net_, scaler);
    }

private:
    Network net_;
};

double require_param(const TunedParams& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw InvalidInputError("missing tuned parameter '" + key + "'");
    }
    return it->second;
}

}  // namespace

CoxnetMethod::CoxnetMethod(CoxnetOptions options, double default_lambda,
                           double default_alpha)
    : options_(options), default_lambda_(default_lambda), default_alpha_(default_alpha) {}

ParamSpace CoxnetMethod::search_space() const {
    ParamSpace space;
    space.dims.push_back({"lambda", ParamDim::Kind::kContinuous, 1e-4, 1e1, true});
    space.dims.push_back({"alpha", ParamDim::Kind::kContinuous, 0.0, 1.0, false});
    return space;
}

TunedParams CoxnetMethod::params_from_point(const std::vector<double>& point) const {
    return {{"lambda", point[0]}, {"alpha", point[1]}};
}

TunedParams CoxnetMethod::default_params() const {
    return {{"lambda", default_lambda_}, {"alpha", default_alpha_}};
}

std::unique_ptr<FittedPredictor> CoxnetMethod::fit(const DataSlice& train,
                                                   const DataSlice& /*validation*/,
                                                   const TunedParams& params,
                                                   std::uint64_t /*fit_seed*/) const {
    const CoxnetFit result =
        fit_elastic_net_cox(train.features, train.labels,
                            require_param(params, "lambda"),
                            require_param(params, "alpha"), options_);
    return std::make_unique<CoxnetPredictor>(result.model);
}

TunedParams CoxnetMethod::tune(const DataSlice& train, const DataSlice& validation,
                               int budget, int init_trials, std::uint64_t seed,
                               const std::function<void(const Trial&)>& on_trial) const {
    if (budget <= 0) return default_params();
    const OptimizationResult result = run_search(
        train, validation, budget, std::min(init_trials, budget), seed, on_trial);
    // Parsimony rule: the largest penalty whose validation CI is within
    // kCiSlack of the best.
    const Trial* pick = &result.best;
    for (const Trial& t : result.trials) {
        if (t.status != Trial::Status::kOk) continue;
        if (t.score + kCiSlack < result.best.score) continue;
        if (t.params[0] > pick->params[0]) pick = &t;
    }
    return params_from_point(pick->params);
}

NnMethod::NnMethod(Activation activation, TrainConfig base_config,
                   int default_layers, int default_units)
    : activation_(activation),
      base_(base_config),
      default_layers_(default_layers),
      default_units_(default_units) {
    if (activation_ == Activation::kLinear) {
        throw InvalidInputError("nn method: hidden activation must be sigmoid or relu");
    }
}

std::string NnMethod::name() const {
    return activation_ == Activation::kRelu ? "nn-relu" : "nn-sigmoid";
}

ParamSpace NnMethod::search_space() const {
    ParamSpace space;
    space.dims.push_back({"layers", ParamDim::Kind::kInteger, 1, 3, false});
    space.dims.push_back({"units", ParamDim::Kind::kInteger, 32, 512, true});
    space.dims.push_back({"lr_pretrain", ParamDim::Kind::kContinuous, 1e-5, 1e-1, true});
    space.dims.push_back({"lr_finetune", ParamDim::Kind::kContinuous, 1e-5, 1e-1, true});
    space.dims.push_back({"corruption", ParamDim::Kind::kContinuous, 0.0, 0.5, false});
    return space;
}

TunedParams NnMethod::params_from_point(const std::vector<double>& point) const {
    return {{"layers", point[0]},
            {"units", point[1]},
            {"lr_pretrain", point[2]},
            {"lr_finetune", point[3]},
            {"corruption", point[4]}};
}

TunedParams NnMethod::default_params() const {
    return {{"layers", static_cast<double>(default_layers_)},
            {"units", static_cast<double>(default_units_)},
            {"lr_pretrain", base_.pretrain_learning_rate},
            {"lr_finetune", base_.finetune_learning_rate},
            {"corruption", base_.corruption_rate}};
}

std::unique_ptr<FittedPredictor> NnMethod::fit(const DataSlice& train,
                                               const DataSlice& validation,
                                               const TunedParams& params,
                                               std::uint64_t fit_seed) const {
    return fit_impl(train, validation, params, fit_seed, true);
}

std::unique_ptr<FittedPredictor> NnMethod::fit_without_pretraining(
    const DataSlice& train, const DataSlice& validation, const TunedParams& params,
    std::uint64_t fit_seed) const {
    return fit_impl(train, validation, params, fit_seed, false);
}

std::unique_ptr<FittedPredictor> NnMethod::fit_impl(const DataSlice& train,
                                                    const DataSlice& validation,
                                                    const TunedParams& params,
                                                    std::uint64_t fit_seed,
                                                    bool pretrain) const {
    TrainConfig config = base_;
    config.pretrain_learning_rate = require_param(params, "lr_pretrain");
    config.finetune_learning_rate = require_param(params, "lr_finetune");
    config.corruption_rate = require_param(params, "corruption");
    config.rng_seed = fit_seed;

    const int layers = static_cast<int>(std::llround(require_param(params, "layers")));
    const int units = static_cast<int>(std::llround(require_param(params, "units")));
    if (layers < 0 || units < 1) {
        throw InvalidInputError("nn method: bad architecture parameters");
    }

    Rng init_rng = Rng::derive(config.rng_seed, 1);
    Network net = make_network(static_cast<int>(train.features.cols()),
                               std::vector<int>(layers, units), activation_, init_rng);
    if (pretrain) {
        Rng pretrain_rng = Rng::derive(config.rng_seed, 2);
        net = stacked_pretrain(net, train.features, config, pretrain_rng);
    }
    const ValidationData val{validation.features, validation.labels};
    FinetuneResult result = finetune_cox(net, train.features, train.labels, config, val);
    return std::make_unique<NnPredictor>(std::move(result.network));
}

std::shared_ptr<Method> make_method(const std::string& kind, const AppConfig& config) {
    if (kind == "coxnet") {
        CoxnetOptions options;
        options.tol = config.coxnet_tol;
        options.max_iter = config.coxnet_max_iter;
        options.standardize = config.coxnet_standardize;
        return std::make_shared<CoxnetMethod>(options, config.coxnet_lambda,
                                              config.coxnet_alpha);
    }
    if (kind == "nn-relu") {
        return std::make_shared<NnMethod>(Activation::kRelu, config.train,
                                          config.nn_hidden_layers,
                                          config.nn_hidden_units);
    }
    if (kind == "nn-sigmoid") {
        return std::make_shared<NnMethod>(Activation::kSigmoid, config.train,
                                          config.nn_hidden_layers,
                                          config.nn_hidden_units);
    }
    throw InvalidInputError("unknown method kind '" + kind +
                            "' (expected coxnet, nn-relu or nn-sigmoid)");
}

}  // namespace survnn
