#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "survnn/labels.hpp"

namespace survnn {

// In-memory dataset: one row per sample. CSV columns are fixed as
// id, time, event, then the feature columns in file order.
struct Dataset {
    std::vector<std::string> sample_ids;
    Eigen::MatrixXd features;  // n x p
    SurvivalLabels labels;
    std::vector<std::string> feature_names;

    int n() const { return static_cast<int>(sample_ids.size()); }
    int p() const { return static_cast<int>(features.cols()); }

    void validate() const;
    Dataset subset(const std::vector<int>& rows) const;
};

// Strict parse: header required; times positive reals; events exactly 0 or
// 1; every cell present and finite. Errors carry row/column coordinates
// (1-based, header is row 1).
Dataset load_csv(const std::string& path);

// Full round-trip precision; load_csv(save_csv(d)) == d. Atomic write.
void save_csv(const Dataset& dataset, const std::string& path);

}  // namespace survnn
