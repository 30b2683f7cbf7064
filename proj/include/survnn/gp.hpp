#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace survnn {

// Squared-exponential kernel with per-dimension length scales, on inputs
// normalized to the unit cube. Scores are standardized internally; the
// posterior is reported back in score units.
struct GpHyperparams {
    Eigen::VectorXd log_length_scales;
    double log_signal_variance = 0.0;
    double log_noise_variance = -13.8;  // ~1e-6, the floor

    static GpHyperparams defaults(int dims);
};

class GpSurrogate {
public:
    struct Posterior {
        double mean;
        double variance;  // clamped at 0
    };

    // points: m x d in [0,1]^d; scores: m raw objective values (m >= 1).
    // Throws NumericalError if the kernel stays singular after jitter.
    static GpSurrogate fit(const Eigen::MatrixXd& points,
                           const Eigen::VectorXd& scores,
                           const GpHyperparams& hp);

    // Maximum-marginal-likelihood hyperparameters via multi-start coordinate
    // search; noise variance floored at 1e-6.
    static GpHyperparams fit_hyperparams(const Eigen::MatrixXd& points,
                                         const Eigen::VectorXd& scores);

    Posterior posterior(const Eigen::VectorXd& query) const;

    double prior_mean() const { return score_mean_; }
    double prior_variance() const {
        return std::exp(hp_.log_signal_variance) * score_std_ * score_std_;
    }
    int size() const { return static_cast<int>(points_.rows()); }

private:
    Eigen::MatrixXd points_;
    GpHyperparams hp_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;  // K^{-1} y_standardized
    double score_mean_ = 0.0;
    double score_std_ = 1.0;
};

double standard_normal_pdf(double z);
double standard_normal_cdf(double z);

// Expected improvement for maximization over incumbent best_score:
// (mu - b) Phi(z) + sigma phi(z), z = (mu - b)/sigma; for sigma = 0 this is
// max(mu - b, 0).
double expected_improvement(const GpSurrogate& surrogate,
                            const Eigen::VectorXd& query, double best_score);

}  // namespace survnn
