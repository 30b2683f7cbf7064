#include "survnn/bayesopt.hpp"

#include <cmath>
#include <stdexcept>

#include "survnn/errors.hpp"

namespace survnn {

void ParamSpace::validate() const {
    if (dims.empty()) {
        throw InvalidInputError("param space: no dimensions");
    }
    for (const ParamDim& dim : dims) {
        if (!(dim.lower < dim.upper)) {
            throw InvalidInputError("param space: lower < upper required for " +
                                    dim.name);
        }
        if (dim.log_scale && !(dim.lower > 0.0)) {
            throw InvalidInputError("param space: log dimension " + dim.name +
                                    " needs positive bounds");
        }
        if (dim.kind == ParamDim::Kind::kInteger &&
            (dim.lower != std::floor(dim.lower) || dim.upper != std::floor(dim.upper))) {
            throw InvalidInputError("param space: integer dimension " + dim.name +
                                    " needs integer bounds");
        }
    }
}

std::vector<double> ParamSpace::from_unit(const std::vector<double>& unit) const {
    std::vector<double> native(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
        const ParamDim& dim = dims[d];
        const double u = std::min(std::max(unit[d], 0.0), 1.0);
        double v;
        if (dim.log_scale) {
            v = std::exp(std::log(dim.lower) +
                         u * (std::log(dim.upper) - std::log(dim.lower)));
        } else {
            v = dim.lower + u * (dim.upper - dim.lower);
        }
        if (dim.kind == ParamDim::Kind::kInteger) {
            v = std::llround(v);
        }
        native[d] = std::min(std::max(v, dim.lower), dim.upper);
    }
    return native;
}

std::vector<double> ParamSpace::to_unit(const std::vector<double>& native) const {
    std::vector<double> unit(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
        const ParamDim& dim = dims[d];
        double u;
        if (dim.log_scale) {
            u = (std::log(native[d]) - std::log(dim.lower)) /
                (std::log(dim.upper) - std::log(dim.lower));
        } else {
            u = (native[d] - dim.lower) / (dim.upper - dim.lower);
        }
        unit[d] = std::min(std::max(u, 0.0), 1.0);
    }
    return unit;
}

bool ParamSpace::contains(const std::vector<double>& native) const {
    if (native.size() != dims.size()) return false;
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (native[d] < dims[d].lower || native[d] > dims[d].upper) return false;
        if (dims[d].kind == ParamDim::Kind::kInteger &&
            native[d] != std::floor(native[d])) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<double> random_unit_point(int dims, Rng& rng) {
    std::vector<double> u(dims);
    for (int d = 0; d < dims; ++d) u[d] = rng.uniform();
    return u;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                             static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::vector<double> propose_next(const GpSurrogate& surrogate,
                                 const ParamSpace& space, double best_score,
                                 Rng& rng, int candidates) {
    space.validate();
    std::vector<double> best_point;
    double best_ei = -1.0;
    for (int c = 0; c < candidates; ++c) {
        const std::vector<double> native =
            space.from_unit(random_unit_point(space.size(), rng));
        // Score at the snapped location so integer dims are judged where
        // they will actually be evaluated.
        const double ei = expected_improvement(
            surrogate, to_eigen(space.to_unit(native)), best_score);
        if (ei > best_ei) {
            best_ei = ei;
            best_point = native;
        }
    }
    return best_point;
}

OptimizationResult run_optimization(
    const ParamSpace& space,
    const std::function<double(const std::vector<double>&)>& objective,
    int budget, int init_trials, Rng& rng,
    const std::function<void(const Trial&)>& on_trial,
    const std::vector<Trial>& resume) {
    space.validate();
    if (budget < init_trials || init_trials < 1) {
        throw InvalidInputError(
            "run_optimization: budget >= init_trials >= 1 required");
    }

    OptimizationResult result;
    result.trials = resume;

    while (static_cast<int>(result.trials.size()) < budget) {
        // Surrogate data: successful trials embedded in the unit cube.
        std::vector<const Trial*> ok;
        for (const Trial& t : result.trials) {
            if (t.status == Trial::Status::kOk) ok.push_back(&t);
        }

        std::vector<double> point;
        if (static_cast<int>(result.trials.size()) < init_trials || ok.empty()) {
            point = space.from_unit(random_unit_point(space.size(), rng));
        } else {
            Eigen::MatrixXd points(ok.size(), space.size());
            Eigen::VectorXd scores(ok.size());
            double best_score = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < ok.size(); ++i) {
                const auto unit = space.to_unit(ok[i]->params);
                for (int d = 0; d < space.size(); ++d) points(i, d) = unit[d];
                scores[i] = ok[i]->score;
                best_score = std::max(best_score, ok[i]->score);
            }
            const GpHyperparams hp = GpSurrogate::fit_hyperparams(points, scores);
            const GpSurrogate surrogate = GpSurrogate::fit(points, scores, hp);
            point = propose_next(surrogate, space, best_score, rng);
        }

        Trial trial;
        trial.params = point;
        try {
            trial.score = objective(point);
            trial.status = std::isfinite(trial.score) ? Trial::Status::kOk
                                                      : Trial::Status::kFailed;
        } catch (const std::exception&) {
            trial.status = Trial::Status::kFailed;
            trial.score = std::numeric_limits<double>::quiet_NaN();
        }
        result.trials.push_back(trial);
        if (on_trial) on_trial(trial);
    }

    const Trial* best = nullptr;
    for (const Trial& t : result.trials) {
        if (t.status != Trial::Status::kOk) continue;
        if (!best || t.score > best->score) best = &t;
    }
    if (!best) {
        throw OptimizationFailedError("run_optimization: every trial failed");
    }
    result.best = *best;
    return result;
}

}  // namespace survnn
