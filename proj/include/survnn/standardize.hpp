#pragma once

#include <Eigen/Core>

namespace survnn {

// Per-column zero-mean/unit-variance transform. Fit on the training split
// only; apply to validation/test to avoid leakage. Zero-variance columns
// keep scale 1.
struct FeatureScaler {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;

    static FeatureScaler fit(const Eigen::MatrixXd& features);
    Eigen::MatrixXd transform(const Eigen::MatrixXd& features) const;
};

}  // namespace survnn
