#include "survnn/cox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survnn/errors.hpp"

namespace survnn {

namespace {

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// Sample indices sorted by ascending time.
std::vector<int> order_by_time(const SurvivalLabels& labels) {
    std::vector<int> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return labels.times[a] < labels.times[b];
    });
    return order;
}

}  // namespace

RiskSetIndex build_risk_sets(const SurvivalLabels& labels) {
    labels.validate();
    const int n = labels.size();
    RiskSetIndex index;
    for (int i = 0; i < n; ++i) {
        if (!labels.events[i]) continue;
        std::vector<int> members;
        for (int j = 0; j < n; ++j) {
            if (labels.times[j] >= labels.times[i]) members.push_back(j);
        }
        index.emplace(i, std::move(members));
    }
    return index;
}

CoxLossGrad cox_loss_and_gradient(const RiskVector& risk,
                                  const SurvivalLabels& labels) {
    validate_risk(risk, labels);
    const int n = labels.size();
    const std::vector<int> order = order_by_time(labels);

    // Suffix log-sum-exp over the time-sorted risks. suffix_lse[k] is the
    // log denominator for an event whose risk set starts at sorted position k.
    std::vector<double> suffix_lse(n);
    suffix_lse[n - 1] = risk[order[n - 1]];
    for (int k = n - 2; k >= 0; --k) {
        suffix_lse[k] = log_add(risk[order[k]], suffix_lse[k + 1]);
    }

    const double shift = risk.maxCoeff();

    CoxLossGrad out;
    out.loss = 0.0;
    out.grad = Eigen::VectorXd::Zero(n);

    // One pass over tie groups in ascending time. Breslow handling: every
    // event in a group shares the denominator anchored at the group start.
    // running_weight accumulates sum over processed events j of
    // exp(shift - D_j); a sample i in or after j's group contributes
    // exp(r_i - D_j) = exp(r_i - shift) * exp(shift - D_j) to its gradient.
    double running_weight = 0.0;
    int group_start = 0;
    while (group_start < n) {
        int group_end = group_start + 1;
        const double group_time = labels.times[order[group_start]];
        while (group_end < n && labels.times[order[group_end]] == group_time) {
            ++group_end;
        }
        const double log_denom = suffix_lse[group_start];
        for (int k = group_start; k < group_end; ++k) {
            const int i = order[k];
            if (labels.events[i]) {
                out.loss -= risk[i] - log_denom;
                running_weight += std::exp(shift - log_denom);
            }
        }
        for (int k = group_start; k < group_end; ++k) {
            const int i = order[k];
            out.grad[i] = std::exp(risk[i] - shift) * running_weight -
                          (labels.events[i] ? 1.0 : 0.0);
        }
        group_start = group_end;
    }
    return out;
}

double neg_log_partial_likelihood(const RiskVector& risk,
                                  const SurvivalLabels& labels) {
    validate_risk(risk, labels);
    const int n = labels.size();
    const std::vector<int> order = order_by_time(labels);

    std::vector<double> suffix_lse(n);
    suffix_lse[n - 1] = risk[order[n - 1]];
    for (int k = n - 2; k >= 0; --k) {
        suffix_lse[k] = log_add(risk[order[k]], suffix_lse[k + 1]);
    }

    double loss = 0.0;
    int group_start = 0;
    while (group_start < n) {
        int group_end = group_start + 1;
        const double group_time = labels.times[order[group_start]];
        while (group_end < n && labels.times[order[group_end]] == group_time) {
            ++group_end;
        }
        for (int k = group_start; k < group_end; ++k) {
            const int i = order[k];
            if (labels.events[i]) loss -= risk[i] - suffix_lse[group_start];
        }
        group_start = group_end;
    }
    return loss;
}

Eigen::VectorXd partial_likelihood_gradient(const RiskVector& risk,
                                            const SurvivalLabels& labels) {
    return cox_loss_and_gradient(risk, labels).grad;
}

namespace {

struct PairCounts {
    long orderable = 0;
    long concordant = 0;
};

PairCounts count_pairs(const RiskVector* risk, const SurvivalLabels& labels) {
    const int n = labels.size();
    PairCounts counts;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            int earlier, later;
            if (labels.events[a] && labels.events[b]) {
                if (labels.times[a] == labels.times[b]) continue;
                earlier = labels.times[a] < labels.times[b] ? a : b;
                later = earlier == a ? b : a;
            } else if (labels.events[a] != labels.events[b]) {
                // Exactly one censored: orderable only when the censoring
                // happens strictly after the observed event.
                earlier = labels.events[a] ? a : b;
                later = earlier == a ? b : a;
                if (!(labels.times[later] > labels.times[earlier])) continue;
            } else {
                continue;  // both censored
            }
            ++counts.orderable;
            if (risk && (*risk)[earlier] > (*risk)[later]) ++counts.concordant;
        }
    }
    return counts;
}

}  // namespace

double concordance_index(const RiskVector& risk, const SurvivalLabels& labels) {
    validate_risk(risk, labels);
    const PairCounts counts = count_pairs(&risk, labels);
    if (counts.orderable == 0) {
        throw UndefinedMetricError("concordance index: no orderable pairs");
    }
    return static_cast<double>(counts.concordant) /
           static_cast<double>(counts.orderable);
}

long count_orderable_pairs(const SurvivalLabels& labels) {
    labels.validate();
    return count_pairs(nullptr, labels).orderable;
}

}  // namespace survnn
