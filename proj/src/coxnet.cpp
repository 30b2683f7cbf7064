#include "survnn/coxnet.hpp"

#include <cmath>

#include "survnn/cox.hpp"
#include "survnn/errors.hpp"
#include "survnn/standardize.hpp"

namespace survnn {

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

namespace {

// Largest singular value of X, estimated by power iteration on X^T X.
double spectral_norm_estimate(const Eigen::MatrixXd& x) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(x.cols()).normalized();
    double norm = 0.0;
    for (int it = 0; it < 30; ++it) {
        Eigen::VectorXd w = x.transpose() * (x * v);
        norm = w.norm();
        if (norm <= 0.0) return 1.0;
        v = w / norm;
    }
    return std::sqrt(norm);
}

struct SmoothPart {
    const Eigen::MatrixXd& x;
    const SurvivalLabels& labels;
    double n;
    double ridge;  // lambda * (1 - alpha)

    double value(const Eigen::VectorXd& beta) const {
        return neg_log_partial_likelihood(x * beta, labels) / n +
               0.5 * ridge * beta.squaredNorm();
    }
    Eigen::VectorXd gradient(const Eigen::VectorXd& beta) const {
        return x.transpose() * partial_likelihood_gradient(x * beta, labels) / n +
               ridge * beta;
    }
};

}  // namespace

CoxnetFit fit_elastic_net_cox(const Eigen::MatrixXd& features,
                              const SurvivalLabels& labels, double lambda,
                              double alpha, const CoxnetOptions& options) {
    labels.validate();
    if (features.rows() != labels.size()) {
        throw InvalidInputError("fit_elastic_net_cox: sample count mismatch");
    }
    if (labels.num_events() == 0) {
        throw UndefinedLossError("fit_elastic_net_cox: no uncensored samples");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0) || lambda < 0.0) {
        throw InvalidInputError("fit_elastic_net_cox: alpha in [0,1], lambda >= 0 required");
    }

    FeatureScaler scaler;
    Eigen::MatrixXd x;
    if (options.standardize) {
        scaler = FeatureScaler::fit(features);
        x = scaler.transform(features);
    } else {
        x = features;
    }

    const double n = static_cast<double>(x.rows());
    const Eigen::Index p = x.cols();
    const SmoothPart smooth{x, labels, n, lambda * (1.0 - alpha)};
    const double l1 = lambda * alpha;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    double smooth_val = smooth.value(beta);
    double objective = smooth_val;  // ||0||_1 = 0

    CoxnetFit fit;
    fit.objective_trace.push_back(objective);

    // Initial step from a cheap Lipschitz estimate; backtracking corrects it
    // and the step is regrown after every accepted iteration.
    const double sigma = spectral_norm_estimate(x);
    double step = 1.0 / (sigma * sigma / n + smooth.ridge + 1e-12);

    for (int iter = 0; iter < options.max_iter; ++iter) {
        const Eigen::VectorXd grad = smooth.gradient(beta);
        Eigen::VectorXd candidate(p);
        double cand_smooth = 0.0;
        double cand_objective = 0.0;
        bool accepted = false;
        while (step > 1e-18) {
            for (Eigen::Index j = 0; j < p; ++j) {
                candidate[j] = soft_threshold(beta[j] - step * grad[j], step * l1);
            }
            const Eigen::VectorXd delta = candidate - beta;
            cand_smooth = smooth.value(candidate);
            const double majorizer = smooth_val + grad.dot(delta) +
                                     delta.squaredNorm() / (2.0 * step);
            cand_objective = cand_smooth + l1 * candidate.lpNorm<1>();
            // Sufficient decrease plus a hard no-increase guard on the
            // penalized objective.
            if (cand_smooth <= majorizer && cand_objective <= objective) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // step underflow: nothing further to gain

        const double change = (candidate - beta).cwiseAbs().maxCoeff();
        beta = candidate;
        smooth_val = cand_smooth;
        objective = cand_objective;
        fit.objective_trace.push_back(objective);
        fit.iterations = iter + 1;
        fit.final_change = change;
        if (change < options.tol) {
            fit.converged = true;
            break;
        }
        step *= 1.25;
    }

    fit.kkt_residual = elastic_net_kkt_residual(x, labels, beta, lambda, alpha);

    fit.model.lambda = lambda;
    fit.model.alpha = alpha;
    if (options.standardize) {
        // Report on the original scale; the dropped centering term only
        // shifts every risk by a constant.
        fit.model.coefficients = beta.cwiseQuotient(scaler.scale);
    } else {
        fit.model.coefficients = beta;
    }
    return fit;
}

RiskVector predict_linear_risk(const ElasticNetCoxModel& model,
                               const Eigen::MatrixXd& features) {
    if (features.cols() != model.coefficients.size()) {
        throw InvalidInputError("predict_linear_risk: feature width mismatch");
    }
    return features * model.coefficients;
}

double elastic_net_kkt_residual(const Eigen::MatrixXd& features,
                                const SurvivalLabels& labels,
                                const Eigen::VectorXd& beta, double lambda,
                                double alpha) {
    const double n = static_cast<double>(features.rows());
    const Eigen::VectorXd grad =
        features.transpose() * partial_likelihood_gradient(features * beta, labels) / n;
    const double l1 = lambda * alpha;
    const double ridge = lambda * (1.0 - alpha);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        double violation;
        if (beta[j] != 0.0) {
            violation = std::abs(grad[j] + ridge * beta[j] +
                                 l1 * (beta[j] > 0.0 ? 1.0 : -1.0));
        } else {
            violation = std::max(std::abs(grad[j]) - l1, 0.0);
        }
        worst = std::max(worst, violation);
    }
    return worst;
}

}  // namespace survnn
