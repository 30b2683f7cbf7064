#include "survnn/gp.hpp"

#include <cmath>
#include <vector>

#include "survnn/errors.hpp"

namespace survnn {

namespace {

constexpr double kNoiseFloorLog = -13.815510557964274;  // log(1e-6)

double kernel(const GpHyperparams& hp, const Eigen::VectorXd& a,
              const Eigen::VectorXd& b) {
    double q = 0.0;
    for (Eigen::Index d = 0; d < a.size(); ++d) {
        const double ell = std::exp(hp.log_length_scales[d]);
        const double diff = (a[d] - b[d]) / ell;
        q += diff * diff;
    }
    return std::exp(hp.log_signal_variance) * std::exp(-0.5 * q);
}

Eigen::MatrixXd kernel_matrix(const GpHyperparams& hp,
                              const Eigen::MatrixXd& points, double jitter) {
    const Eigen::Index m = points.rows();
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = kernel(hp, points.row(i), points.row(j));
            k(i, j) = v;
            k(j, i) = v;
        }
        k(i, i) += std::exp(hp.log_noise_variance) + jitter;
    }
    return k;
}

struct Standardized {
    Eigen::VectorXd values;
    double mean;
    double std;
};

Standardized standardize_scores(const Eigen::VectorXd& scores) {
    Standardized s;
    s.mean = scores.mean();
    const double var = (scores.array() - s.mean).square().sum() /
                       static_cast<double>(scores.size());
    s.std = std::sqrt(var);
    if (!(s.std > 1e-12)) s.std = 1.0;
    s.values = (scores.array() - s.mean) / s.std;
    return s;
}

// Log marginal likelihood of standardized scores under hp; -inf on failure.
double log_marginal_likelihood(const GpHyperparams& hp,
                               const Eigen::MatrixXd& points,
                               const Eigen::VectorXd& y) {
    const Eigen::MatrixXd k = kernel_matrix(hp, points, 1e-10);
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        return -std::numeric_limits<double>::infinity();
    }
    const Eigen::VectorXd alpha = llt.solve(y);
    double log_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += std::log(l(i, i));
    return -0.5 * y.dot(alpha) - log_det -
           0.5 * static_cast<double>(y.size()) * std::log(2.0 * M_PI);
}

}  // namespace

GpHyperparams GpHyperparams::defaults(int dims) {
    GpHyperparams hp;
    hp.log_length_scales = Eigen::VectorXd::Constant(dims, std::log(0.3));
    hp.log_signal_variance = 0.0;
    hp.log_noise_variance = std::log(1e-4);
    return hp;
}

GpSurrogate GpSurrogate::fit(const Eigen::MatrixXd& points,
                             const Eigen::VectorXd& scores,
                             const GpHyperparams& hp) {
    if (points.rows() < 1 || points.rows() != scores.size()) {
        throw InvalidInputError("gp: need at least one (point, score) pair");
    }
    if (hp.log_length_scales.size() != points.cols()) {
        throw InvalidInputError("gp: length-scale count does not match dims");
    }
    GpSurrogate gp;
    gp.points_ = points;
    gp.hp_ = hp;
    const Standardized s = standardize_scores(scores);
    gp.score_mean_ = s.mean;
    gp.score_std_ = s.std;

    double jitter = 1e-10;
    for (int attempt = 0; attempt < 7; ++attempt) {
        gp.llt_.compute(kernel_matrix(hp, points, jitter));
        if (gp.llt_.info() == Eigen::Success) {
            gp.alpha_ = gp.llt_.solve(s.values);
            return gp;
        }
        jitter *= 100.0;
    }
    throw NumericalError("gp: kernel matrix not positive definite after jitter");
}

GpSurrogate::Posterior GpSurrogate::posterior(const Eigen::VectorXd& query) const {
    const Eigen::Index m = points_.rows();
    Eigen::VectorXd k_star(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        k_star[i] = kernel(hp_, points_.row(i), query);
    }
    const double mean_std = k_star.dot(alpha_);
    const Eigen::VectorXd v = llt_.solve(k_star);
    double var_std = std::exp(hp_.log_signal_variance) - k_star.dot(v);
    if (var_std < 0.0) var_std = 0.0;

    Posterior post;
    post.mean = score_mean_ + score_std_ * mean_std;
    post.variance = var_std * score_std_ * score_std_;
    return post;
}

GpHyperparams GpSurrogate::fit_hyperparams(const Eigen::MatrixXd& points,
                                           const Eigen::VectorXd& scores) {
    const int dims = static_cast<int>(points.cols());
    const Standardized s = standardize_scores(scores);

    const double ell_lo = std::log(0.03), ell_hi = std::log(30.0);
    const double sig_lo = std::log(1e-3), sig_hi = std::log(1e2);
    const double noise_hi = 0.0;

    auto clamp = [](double v, double lo, double hi) {
        return v < lo ? lo : (v > hi ? hi : v);
    };

    std::vector<GpHyperparams> starts;
    for (double ell : {0.15, 0.5, 1.5}) {
        GpHyperparams hp;
        hp.log_length_scales = Eigen::VectorXd::Constant(dims, std::log(ell));
        hp.log_signal_variance = 0.0;
        hp.log_noise_variance = std::log(1e-3);
        starts.push_back(hp);
    }

    GpHyperparams best = starts.front();
    double best_lml = -std::numeric_limits<double>::infinity();
    const double offsets[] = {-1.5, -0.75, -0.3, -0.1, 0.1, 0.3, 0.75, 1.5};

    for (GpHyperparams hp : starts) {
        double current = log_marginal_likelihood(hp, points, s.values);
        for (int sweep = 0; sweep < 3; ++sweep) {
            // Coordinates: each length scale, then signal, then noise.
            for (int coord = 0; coord < dims + 2; ++coord) {
                double base;
                if (coord < dims) base = hp.log_length_scales[coord];
                else if (coord == dims) base = hp.log_signal_variance;
                else base = hp.log_noise_variance;

                double best_val = base, best_here = current;
                for (double off : offsets) {
                    double candidate = base + off;
                    if (coord < dims) candidate = clamp(candidate, ell_lo, ell_hi);
                    else if (coord == dims) candidate = clamp(candidate, sig_lo, sig_hi);
                    else candidate = clamp(candidate, kNoiseFloorLog, noise_hi);

                    if (coord < dims) hp.log_length_scales[coord] = candidate;
                    else if (coord == dims) hp.log_signal_variance = candidate;
                    else hp.log_noise_variance = candidate;

                    const double lml = log_marginal_likelihood(hp, points, s.values);
                    if (lml > best_here) {
                        best_here = lml;
                        best_val = candidate;
                    }
                }
                if (coord < dims) hp.log_length_scales[coord] = best_val;
                else if (coord == dims) hp.log_signal_variance = best_val;
                else hp.log_noise_variance = best_val;
                current = best_here;
            }
        }
        if (current > best_lml) {
            best_lml = current;
            best = hp;
        }
    }
    if (best.log_noise_variance < kNoiseFloorLog) {
        best.log_noise_variance = kNoiseFloorLog;
    }
    return best;
}

double standard_normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double standard_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double expected_improvement(const GpSurrogate& surrogate,
                            const Eigen::VectorXd& query, double best_score) {
    const auto post = surrogate.posterior(query);
    const double sigma = std::sqrt(post.variance);
    const double gain = post.mean - best_score;
    if (sigma <= 0.0) return gain > 0.0 ? gain : 0.0;
    const double z = gain / sigma;
    return gain * standard_normal_cdf(z) + sigma * standard_normal_pdf(z);
}

}  // namespace survnn
