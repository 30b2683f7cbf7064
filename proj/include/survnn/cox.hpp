#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "survnn/labels.hpp"

namespace survnn {

// Risk sets of the Cox partial likelihood: for each uncensored sample i,
// R_i = { j : t_j >= t_i } (inclusive, so i is always a member). Keys are
// exactly the uncensored sample indices; member lists are sorted ascending.
using RiskSetIndex = std::map<int, std::vector<int>>;

RiskSetIndex build_risk_sets(const SurvivalLabels& labels);

// Negative log partial likelihood,
//   -sum_{i in U} ( r_i - log sum_{j in R_i} exp(r_j) ),
// with Breslow handling of tied event times and log-sum-exp stabilization.
// An all-censored dataset has an empty U and yields 0.
double neg_log_partial_likelihood(const RiskVector& risk,
                                  const SurvivalLabels& labels);

// Gradient of neg_log_partial_likelihood with respect to each risk score:
//   g_i = -c_i + sum_{j in U : i in R_j} exp(r_i) / sum_{k in R_j} exp(r_k).
// Entries sum to zero; all-censored input yields the zero vector.
Eigen::VectorXd partial_likelihood_gradient(const RiskVector& risk,
                                            const SurvivalLabels& labels);

struct CoxLossGrad {
    double loss;
    Eigen::VectorXd grad;
};

// Loss and gradient in one pass (shares the sort and the risk-set scans).
CoxLossGrad cox_loss_and_gradient(const RiskVector& risk,
                                  const SurvivalLabels& labels);

// Concordance index over orderable pairs, hazard orientation: a pair
// (earlier death i, later j) counts as concordant when risk_i > risk_j.
// Orderable: both events observed with distinct times, or exactly one
// censored strictly after the other's event. Tied risks contribute 0.
// Throws UndefinedMetricError when no pair is orderable.
double concordance_index(const RiskVector& risk, const SurvivalLabels& labels);

// Number of orderable pairs (0 when the metric would be undefined).
long count_orderable_pairs(const SurvivalLabels& labels);

}  // namespace survnn
