#pragma once

#include <functional>
#include <string>
#include <vector>

#include "survnn/gp.hpp"
#include "survnn/rng.hpp"

namespace survnn {

struct ParamDim {
    enum class Kind { kContinuous, kInteger };

    std::string name;
    Kind kind = Kind::kContinuous;
    double lower = 0.0;
    double upper = 1.0;
    bool log_scale = false;
};

// Ordered search box. Points travel as native-scale vectors, one value per
// dimension; the GP sees them mapped to the unit cube (log dims through log).
struct ParamSpace {
    std::vector<ParamDim> dims;

    int size() const { return static_cast<int>(dims.size()); }
    void validate() const;

    // Maps a unit-cube point to native scale, rounding integer dims.
    std::vector<double> from_unit(const std::vector<double>& unit) const;
    // Inverse embedding of a native point (after snapping) into the cube.
    std::vector<double> to_unit(const std::vector<double>& native) const;
    bool contains(const std::vector<double>& native) const;
};

struct Trial {
    enum class Status { kOk, kFailed };

    std::vector<double> params;  // native scale
    double score = 0.0;          // validation CI or other objective; higher is better
    Status status = Status::kOk;
};

// EI-maximizing point among `candidates` uniform draws in the unit cube,
// snapped to native scale before scoring so integer rounding is respected.
std::vector<double> propose_next(const GpSurrogate& surrogate,
                                 const ParamSpace& space, double best_score,
                                 Rng& rng, int candidates = 2048);

struct OptimizationResult {
    Trial best;
    std::vector<Trial> trials;
};

// init_trials random evaluations, then GP-guided expected-improvement
// proposals until `budget` evaluations in total. Failed evaluations (thrown
// exceptions or non-finite scores) are recorded and excluded from the
// surrogate. `resume` trials count toward the budget. Throws
// OptimizationFailedError when no trial succeeds.
OptimizationResult run_optimization(
    const ParamSpace& space,
    const std::function<double(const std::vector<double>&)>& objective,
    int budget, int init_trials, Rng& rng,
    const std::function<void(const Trial&)>& on_trial = {},
    const std::vector<Trial>& resume = {});

}  // namespace survnn
