#pragma once

#include <optional>
#include <string>

#include "survnn/coxnet.hpp"
#include "survnn/network.hpp"
#include "survnn/standardize.hpp"

namespace survnn {

// Flat text model format, version 1. First line: "survnn-model 1 <kind>"
// with kind "nn" or "coxnet"; then a self-describing header (layer count,
// widths, activations / p, lambda, alpha), an optional feature-scaler block,
// and one line of decimal reals per parameter matrix row. Values round-trip
// exactly.
struct SavedModel {
    std::string kind;
    std::optional<FeatureScaler> scaler;
    std::optional<Network> network;
    std::optional<ElasticNetCoxModel> coxnet;
};

std::string serialize_network(const Network& net,
                              const std::optional<FeatureScaler>& scaler = {});
std::string serialize_coxnet(const ElasticNetCoxModel& model,
                             const std::optional<FeatureScaler>& scaler = {});

// Throws ParseError on malformed input.
SavedModel parse_model(const std::string& text);

void save_model_file(const std::string& path, const std::string& serialized);
SavedModel load_model_file(const std::string& path);

}  // namespace survnn
