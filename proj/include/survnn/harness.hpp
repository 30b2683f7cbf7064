#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "survnn/bayesopt.hpp"
#include "survnn/dataset.hpp"
#include "survnn/labels.hpp"
#include "survnn/split.hpp"
#include "survnn/standardize.hpp"

namespace survnn {

// One split's worth of data, already standardized by the harness.
struct DataSlice {
    Eigen::MatrixXd features;
    SurvivalLabels labels;
};

using TunedParams = std::map<std::string, double>;

std::string tuned_params_to_string(const TunedParams& params);
TunedParams tuned_params_from_string(const std::string& text);

// A trained model ready to score new samples.
class FittedPredictor {
public:
    virtual ~FittedPredictor() = default;
    virtual RiskVector predict(const Eigen::MatrixXd& features) const = 0;
    virtual std::string serialize(const std::optional<FeatureScaler>& scaler) const = 0;
};

// A competing method under the evaluation protocol. Tuning sees train and
// validation data only; test features reach the method exclusively through
// FittedPredictor::predict, and test labels never do.
class Method {
public:
    virtual ~Method() = default;

    virtual std::string name() const = 0;
    virtual ParamSpace search_space() const = 0;
    virtual TunedParams params_from_point(const std::vector<double>& point) const = 0;
    virtual TunedParams default_params() const = 0;

    virtual std::unique_ptr<FittedPredictor> fit(const DataSlice& train,
                                                 const DataSlice& validation,
                                                 const TunedParams& params,
                                                 std::uint64_t fit_seed) const = 0;

    // Bayesian-optimization search maximizing validation CI; budget 0 means
    // "use defaults, no search". Methods may override the selection policy.
    virtual TunedParams tune(const DataSlice& train, const DataSlice& validation,
                             int budget, int init_trials, std::uint64_t seed,
                             const std::function<void(const Trial&)>& on_trial) const;

protected:
    // Shared search loop: each trial fits on train and scores validation CI.
    OptimizationResult run_search(const DataSlice& train, const DataSlice& validation,
                                  int budget, int init_trials, std::uint64_t seed,
                                  const std::function<void(const Trial&)>& on_trial) const;
};

struct MethodDescriptor {
    std::shared_ptr<Method> method;
    int tune_budget = 25;  // 0: skip tuning, use the method's defaults
    int init_trials = 8;
};

struct MethodResult {
    std::string method;
    std::vector<double> test_ci;      // per permutation; NaN marks a failure
    std::vector<TunedParams> chosen;  // per permutation
    double mean_ci = 0.0;             // over successful permutations
    double std_ci = 0.0;              // sample (n-1) standard deviation
    bool failed = false;              // no permutation succeeded
};

struct EvalReport {
    int permutations = 0;
    std::uint64_t base_seed = 0;
    std::vector<MethodResult> methods;
};

struct ProtocolHooks {
    std::function<void(const std::string& method, int permutation, const Trial&)> on_trial;
    std::function<void(const std::string& method, int permutation,
                       const std::string& error)>
        on_error;
    std::function<void(const std::string& method, int permutation,
                       const FittedPredictor& predictor, const FeatureScaler& scaler)>
        on_model;
};

// The evaluation protocol: `permutations` seeded 70/15/15 splits shared by
// every method; per-permutation tuning on (train -> validation), refit on
// train, concordance scored on test. Feature standardization is fit on the
// train split only. Permutation k uses seed base_seed + k.
EvalReport run_protocol(const Dataset& dataset,
                        const std::vector<MethodDescriptor>& methods,
                        int permutations, std::uint64_t base_seed,
                        const ProtocolHooks& hooks = {});

// Stable 64-bit hash of a method name; keeps tuning streams independent of
// the method's position in the list.
std::uint64_t method_stream_id(const std::string& name);

}  // namespace survnn
