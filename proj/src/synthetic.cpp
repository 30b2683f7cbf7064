#include "survnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survnn/errors.hpp"
#include "survnn/rng.hpp"

namespace survnn {

void SyntheticSpec::validate() const {
    if (n < 10) throw InvalidInputError("synthetic spec: n >= 10 required");
    if (p < 0) throw InvalidInputError("synthetic spec: p >= 0 required");
    if (sparsity < 0 || sparsity > p) {
        throw InvalidInputError("synthetic spec: sparsity must be in [0, p]");
    }
    if (!(censoring_rate_target > 0.0 && censoring_rate_target < 1.0)) {
        throw InvalidInputError("synthetic spec: censoring target must be in (0,1)");
    }
}

namespace {

// Relative weight of the linear part against the squared/interaction part in
// nonlinear risks. Chosen so a linear model sees real but partial signal.
constexpr double kLinearMix = 0.6;
constexpr double kNonlinearMix = 1.0;

void standardize_in_place(Eigen::VectorXd& v) {
    const double mean = v.mean();
    const double sd = std::sqrt((v.array() - mean).square().sum() /
                                static_cast<double>(v.size()));
    if (sd > 0.0) {
        v = (v.array() - mean) / sd;
    } else {
        v.setZero();
    }
}

std::string padded_name(const char* prefix, int index, int max_value) {
    int digits = 1;
    for (int v = max_value; v >= 10; v /= 10) ++digits;
    std::string number = std::to_string(index);
    return prefix + std::string(digits - number.size(), '0') + number;
}

}  // namespace

GeneratedData generate(const SyntheticSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);

    const int n = spec.n;
    const int p = spec.p;

    Eigen::MatrixXd features(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) features(i, j) = rng.normal();
    }

    // Active feature subset and signed weights of magnitude U(0.5, 1.5).
    std::vector<int> all_features(p);
    std::iota(all_features.begin(), all_features.end(), 0);
    rng.shuffle(all_features);
    std::vector<int> active(all_features.begin(), all_features.begin() + spec.sparsity);
    std::sort(active.begin(), active.end());

    auto signed_weight = [&rng]() {
        const double magnitude = rng.uniform(0.5, 1.5);
        return rng.uniform() < 0.5 ? -magnitude : magnitude;
    };

    Eigen::VectorXd risk = Eigen::VectorXd::Zero(n);
    if (!active.empty()) {
        Eigen::VectorXd linear = Eigen::VectorXd::Zero(n);
        for (int j : active) {
            linear += signed_weight() * features.col(j);
        }
        if (spec.risk_kind == SyntheticSpec::RiskKind::kLinear) {
            risk = linear;
        } else {
            Eigen::VectorXd curved = Eigen::VectorXd::Zero(n);
            for (int j : active) {
                // Centered squares keep the term mean-zero.
                curved += signed_weight() *
                          (features.col(j).array().square() - 1.0).matrix();
            }
            for (std::size_t a = 0; a < active.size(); ++a) {
                for (std::size_t b = a + 1; b < active.size(); ++b) {
                    curved += signed_weight() *
                              features.col(active[a])
                                  .cwiseProduct(features.col(active[b]));
                }
            }
            standardize_in_place(linear);
            standardize_in_place(curved);
            risk = kLinearMix * linear + kNonlinearMix * curved;
            standardize_in_place(risk);
        }
    }

    // Death times: exponential with rate e^risk. Uniform draws are shared
    // with the censoring side so calibration can rescale cheaply.
    Eigen::VectorXd death(n), censor_base(n);
    for (int i = 0; i < n; ++i) {
        death[i] = -std::log(1.0 - rng.uniform()) * std::exp(-risk[i]);
        censor_base[i] = -std::log(1.0 - rng.uniform());  // censor time at rate 1
    }

    // Bisect the censoring rate (log scale) toward the target fraction.
    auto censored_fraction = [&](double rate) {
        int censored = 0;
        for (int i = 0; i < n; ++i) {
            if (censor_base[i] / rate < death[i]) ++censored;
        }
        return static_cast<double>(censored) / n;
    };
    double lo = 1e-10, hi = 1e10;
    double best_rate = 1.0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = std::sqrt(lo * hi);
        const double frac = censored_fraction(mid);
        const double gap = std::abs(frac - spec.censoring_rate_target);
        if (gap < best_gap) {
            best_gap = gap;
            best_rate = mid;
        }
        if (frac < spec.censoring_rate_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (best_gap > 0.05) {
        throw GenerationError(
            "synthetic generator: censoring calibration missed target by " +
            std::to_string(best_gap));
    }

    GeneratedData out;
    out.true_risk = risk;
    out.dataset.features = std::move(features);
    for (int i = 0; i < n; ++i) {
        const double censor_time = censor_base[i] / best_rate;
        const double time = std::max(std::min(death[i], censor_time), 1e-12);
        out.dataset.labels.times.push_back(time);
        out.dataset.labels.events.push_back(death[i] <= censor_time ? 1 : 0);
        out.dataset.sample_ids.push_back(padded_name("s", i, n - 1));
    }
    for (int j = 0; j < p; ++j) {
        out.dataset.feature_names.push_back(padded_name("f", j, p - 1));
    }
    out.dataset.validate();
    return out;
}

}  // namespace survnn
