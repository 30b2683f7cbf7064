#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace survnn {

// One real risk score per sample. Hazard orientation throughout: a higher
// score means higher hazard and shorter expected survival.
using RiskVector = Eigen::VectorXd;

// Right-censored survival outcomes: time of death or of last follow-up,
// plus an event flag (1 = death observed, 0 = censored).
struct SurvivalLabels {
    std::vector<double> times;
    std::vector<std::uint8_t> events;

    int size() const { return static_cast<int>(times.size()); }

    int num_events() const {
        int k = 0;
        for (auto e : events) k += (e != 0);
        return k;
    }

    // Throws InvalidInputError unless n >= 1, lengths match, and every time
    // is strictly positive and finite.
    void validate() const;
};

// Throws InvalidInputError if risk length differs from labels or any score
// is non-finite.
void validate_risk(const RiskVector& risk, const SurvivalLabels& labels);

}  // namespace survnn
