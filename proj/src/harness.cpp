#include "survnn/harness.hpp"

#include <cmath>

#include "survnn/cox.hpp"
#include "survnn/errors.hpp"
#include "survnn/textio.hpp"

namespace survnn {

std::string tuned_params_to_string(const TunedParams& params) {
    if (params.empty()) return "-";
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty()) out += ';';
        out += key;
        out += '=';
        out += format_double(value);
    }
    return out;
}

TunedParams tuned_params_from_string(const std::string& text) {
    TunedParams params;
    if (text == "-" || text.empty()) return params;
    for (const auto piece : split(text, ';')) {
        const auto kv = split(piece, '=');
        double value;
        if (kv.size() != 2 || kv[0].empty() || !parse_double(kv[1], value)) {
            throw ParseError("bad params token '" + std::string(piece) + "'");
        }
        params[std::string(kv[0])] = value;
    }
    return params;
}

std::uint64_t method_stream_id(const std::string& name) {
    // FNV-1a
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

OptimizationResult Method::run_search(
    const DataSlice& train, const DataSlice& validation, int budget,
    int init_trials, std::uint64_t seed,
    const std::function<void(const Trial&)>& on_trial) const {
    // One fit seed for every trial keeps the comparison across
    // hyperparameters fair.
    const std::uint64_t fit_seed = mix_seed(seed);
    auto objective = [&](const std::vector<double>& point) {
        const TunedParams params = params_from_point(point);
        const auto predictor = fit(train, validation, params, fit_seed);
        return concordance_index(predictor->predict(validation.features),
                                 validation.labels);
    };
    Rng rng(seed);
    return run_optimization(search_space(), objective, budget, init_trials, rng,
                            on_trial);
}

TunedParams Method::tune(const DataSlice& train, const DataSlice& validation,
                         int budget, int init_trials, std::uint64_t seed,
                         const std::function<void(const Trial&)>& on_trial) const {
    if (budget <= 0) return default_params();
    const OptimizationResult result =
        run_search(train, validation, budget, std::min(init_trials, budget), seed,
                   on_trial);
    return params_from_point(result.best.params);
}

namespace {

DataSlice make_slice(const Dataset& dataset, const std::vector<int>& rows,
                     const FeatureScaler& scaler) {
    const Dataset sub = dataset.subset(rows);
    return DataSlice{scaler.transform(sub.features), sub.labels};
}

}  // namespace

EvalReport run_protocol(const Dataset& dataset,
                        const std::vector<MethodDescriptor>& methods,
                        int permutations, std::uint64_t base_seed,
                        const ProtocolHooks& hooks) {
    dataset.validate();
    if (permutations < 1) {
        throw InvalidInputError("run_protocol: need at least one permutation");
    }

    EvalReport report;
    report.permutations = permutations;
    report.base_seed = base_seed;
    report.methods.resize(methods.size());
    for (std::size_t m = 0; m < methods.size(); ++m) {
        report.methods[m].method = methods[m].method->name();
    }

    for (int perm = 0; perm < permutations; ++perm) {
        const std::uint64_t perm_seed = base_seed + static_cast<std::uint64_t>(perm);
        const SplitPlan plan = make_split(dataset.n(), perm_seed);

        // Leakage guard: scaling statistics come from the train split only.
        const Dataset train_data = dataset.subset(plan.train);
        const FeatureScaler scaler = FeatureScaler::fit(train_data.features);
        const DataSlice train{scaler.transform(train_data.features), train_data.labels};
        const DataSlice validation = make_slice(dataset, plan.validation, scaler);
        const DataSlice test = make_slice(dataset, plan.test, scaler);

        for (std::size_t m = 0; m < methods.size(); ++m) {
            const MethodDescriptor& descriptor = methods[m];
            MethodResult& out = report.methods[m];
            try {
                const std::uint64_t tune_seed = mix_seed(
                    perm_seed + method_stream_id(descriptor.method->name()));
                auto trial_sink = [&](const Trial& t) {
                    if (hooks.on_trial) hooks.on_trial(out.method, perm, t);
                };
                const TunedParams chosen = descriptor.method->tune(
                    train, validation, descriptor.tune_budget,
                    descriptor.init_trials, tune_seed, trial_sink);
                const auto predictor =
                    descriptor.method->fit(train, validation, chosen, perm_seed);
                const double ci = concordance_index(
                    predictor->predict(test.features), test.labels);
                out.test_ci.push_back(ci);
                out.chosen.push_back(chosen);
                if (hooks.on_model) hooks.on_model(out.method, perm, *predictor, scaler);
            } catch (const std::exception& e) {
                out.test_ci.push_back(std::numeric_limits<double>::quiet_NaN());
                out.chosen.push_back({});
                if (hooks.on_error) hooks.on_error(out.method, perm, e.what());
            }
        }
    }

    for (MethodResult& result : report.methods) {
        double sum = 0.0;
        int count = 0;
        for (double ci : result.test_ci) {
            if (std::isfinite(ci)) {
                sum += ci;
                ++count;
            }
        }
        result.failed = count == 0;
        result.mean_ci = count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
        if (count > 1) {
            double ss = 0.0;
            for (double ci : result.test_ci) {
                if (std::isfinite(ci)) {
                    ss += (ci - result.mean_ci) * (ci - result.mean_ci);
                }
            }
            result.std_ci = std::sqrt(ss / (count - 1));
        } else {
            result.std_ci = count == 1 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return report;
}

}  // namespace survnn
