#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "survnn/dataset.hpp"

namespace survnn {

// Synthetic censored survival data: standard-normal features, a sparse true
// risk (linear, or with squared and interaction terms), exponential death
// times with rate e^risk, and an independent exponential censoring time
// whose rate is calibrated so the realized censoring fraction lands near the
// target.
struct SyntheticSpec {
    enum class RiskKind { kLinear, kNonlinear };

    int n = 628;
    int p = 183;
    RiskKind risk_kind = RiskKind::kLinear;
    int sparsity = 10;  // number of active features
    double censoring_rate_target = 0.3;
    std::uint64_t seed = 1;

    void validate() const;
};

struct GeneratedData {
    Dataset dataset;
    Eigen::VectorXd true_risk;  // the generator's hidden risk per sample
};

// Throws GenerationError when censoring calibration cannot reach the target
// within 0.05 after bounded bisection.
GeneratedData generate(const SyntheticSpec& spec);

}  // namespace survnn
