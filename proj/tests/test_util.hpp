#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

#include "survnn/labels.hpp"
#include "survnn/rng.hpp"

namespace survnn::testutil {

// Central finite differences of a scalar function of a vector.
inline Eigen::VectorXd fd_gradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-5) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double orig = xp[i];
        xp[i] = orig + h;
        const double up = f(xp);
        xp[i] = orig - h;
        const double down = f(xp);
        xp[i] = orig;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

// Elementwise |a-b| <= tol * max(1, |b|).
inline bool close_rel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                      double tol) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(b[i]))) return false;
    }
    return true;
}

// Direct evaluation of the negative log partial likelihood straight from its
// definition: no sorting, no log-sum-exp stabilization. Test oracle only.
inline double naive_neg_log_partial_likelihood(const RiskVector& risk,
                                               const SurvivalLabels& labels) {
    double total = 0.0;
    for (int i = 0; i < labels.size(); ++i) {
        if (!labels.events[i]) continue;
        double denom = 0.0;
        for (int j = 0; j < labels.size(); ++j) {
            if (labels.times[j] >= labels.times[i]) denom += std::exp(risk[j]);
        }
        total -= risk[i] - std::log(denom);
    }
    return total;
}

struct PairTally {
    long orderable = 0;
    long concordant = 0;
};

// Exhaustive ordered-pair enumeration of the concordance rule: an ordered
// pair (i, j) is orderable exactly when i's event is observed and t_j > t_i,
// covering both the two-event case and the late-censoring case. Test oracle.
inline PairTally brute_force_concordance(const RiskVector& risk,
                                         const SurvivalLabels& labels) {
    PairTally tally;
    const int n = labels.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!labels.events[i]) continue;
            if (!(labels.times[j] > labels.times[i])) continue;
            ++tally.orderable;
            if (risk[i] > risk[j]) ++tally.concordant;
        }
    }
    return tally;
}

inline SurvivalLabels random_labels(Rng& rng, int n, double censor_prob,
                                    bool with_ties) {
    SurvivalLabels labels;
    labels.times.resize(n);
    labels.events.resize(n);
    for (int i = 0; i < n; ++i) {
        if (with_ties) {
            labels.times[i] = 0.5 * (1.0 + rng.uniform_int(8));
        } else {
            labels.times[i] = 0.1 + rng.uniform();
        }
        labels.events[i] = rng.uniform() >= censor_prob ? 1 : 0;
    }
    return labels;
}

inline RiskVector random_risk(Rng& rng, int n, double scale) {
    RiskVector risk(n);
    for (int i = 0; i < n; ++i) risk[i] = scale * rng.normal();
    return risk;
}

}  // namespace survnn::testutil
