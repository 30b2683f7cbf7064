#include "survnn/labels.hpp"

#include <cmath>

#include "survnn/errors.hpp"

namespace survnn {

void SurvivalLabels::validate() const {
    if (times.empty()) {
        throw InvalidInputError("survival labels: empty dataset");
    }
    if (times.size() != events.size()) {
        throw InvalidInputError("survival labels: times and events lengths differ");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] <= 0.0) {
            throw InvalidInputError("survival labels: time at index " +
                                    std::to_string(i) + " is not a positive finite real");
        }
    }
}

void validate_risk(const RiskVector& risk, const SurvivalLabels& labels) {
    labels.validate();
    if (risk.size() != labels.size()) {
        throw InvalidInputError("risk vector length " + std::to_string(risk.size()) +
                                " does not match label count " +
                                std::to_string(labels.size()));
    }
    for (Eigen::Index i = 0; i < risk.size(); ++i) {
        if (!std::isfinite(risk[i])) {
            throw InvalidInputError("risk vector: non-finite score at index " +
                                    std::to_string(i));
        }
    }
}

}  // namespace survnn
