#pragma once

#include <Eigen/Core>
#include <vector>

#include "survnn/labels.hpp"

namespace survnn {

// Elastic-net-penalized linear Cox model. Coefficients are reported on the
// original feature scale regardless of internal standardization.
struct ElasticNetCoxModel {
    Eigen::VectorXd coefficients;
    double lambda = 0.0;  // overall penalty strength
    double alpha = 1.0;   // L1 fraction in [0,1]
};

struct CoxnetOptions {
    double tol = 1e-7;  // convergence: max absolute coefficient change
    int max_iter = 10000;
    bool standardize = true;
};

struct CoxnetFit {
    ElasticNetCoxModel model;
    bool converged = false;
    int iterations = 0;
    double final_change = 0.0;           // last max |delta beta|, the gap on non-convergence
    double kkt_residual = 0.0;           // max stationarity violation at the solution
    std::vector<double> objective_trace; // penalized objective, iteration 0 = start
};

// Proximal operator of the L1 penalty: sign(x) * max(|x| - t, 0).
double soft_threshold(double x, double t);

// Minimizes (1/n) * neg_log_partial_likelihood(X beta) +
// lambda * (alpha * ||beta||_1 + (1-alpha)/2 * ||beta||_2^2)
// by proximal gradient descent with backtracking line search. The penalized
// objective is non-increasing across iterations. Non-convergence is
// reported through `converged` and `final_change`, never silently.
CoxnetFit fit_elastic_net_cox(const Eigen::MatrixXd& features,
                              const SurvivalLabels& labels, double lambda,
                              double alpha, const CoxnetOptions& options = {});

// X beta: the log-hazard score (exponentiation is unnecessary for ranking).
RiskVector predict_linear_risk(const ElasticNetCoxModel& model,
                               const Eigen::MatrixXd& features);

// Max violation of the elastic-net stationarity conditions at beta, on the
// scale of `features`: for nonzero beta_j,
// |grad_j + lambda*(1-alpha)*beta_j + lambda*alpha*sign(beta_j)|; for zero
// beta_j, max(|grad_j| - lambda*alpha, 0), where grad is the gradient of
// (1/n) * neg_log_partial_likelihood(X beta).
double elastic_net_kkt_residual(const Eigen::MatrixXd& features,
                                const SurvivalLabels& labels,
                                const Eigen::VectorXd& beta, double lambda,
                                double alpha);

}  // namespace survnn
