#include "survnn/standardize.hpp"

#include <cmath>

#include "survnn/errors.hpp"

namespace survnn {

FeatureScaler FeatureScaler::fit(const Eigen::MatrixXd& features) {
    if (features.rows() == 0) {
        throw InvalidInputError("feature scaler: no rows");
    }
    FeatureScaler scaler;
    scaler.mean = features.colwise().mean();
    const Eigen::MatrixXd centered = features.rowwise() - scaler.mean.transpose();
    scaler.scale = (centered.array().square().colwise().sum() /
                    static_cast<double>(features.rows()))
                       .sqrt()
                       .transpose();
    for (Eigen::Index j = 0; j < scaler.scale.size(); ++j) {
        if (!(scaler.scale[j] > 0.0)) scaler.scale[j] = 1.0;
    }
    return scaler;
}

Eigen::MatrixXd FeatureScaler::transform(const Eigen::MatrixXd& features) const {
    if (features.cols() != mean.size()) {
        throw InvalidInputError("feature scaler: column count mismatch");
    }
    Eigen::MatrixXd out = features.rowwise() - mean.transpose();
    out.array().rowwise() /= scale.transpose().array();
    return out;
}

}  // namespace survnn
