#include "survnn/serialize.hpp"

#include <sstream>

#include "survnn/errors.hpp"
#include "survnn/textio.hpp"

namespace survnn {

namespace {

void append_vector_line(std::string& out, const char* tag,
                        const Eigen::VectorXd& v) {
    out += tag;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out += ' ';
        out += format_double(v[i]);
    }
    out += '\n';
}

void append_matrix_rows(std::string& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ' ';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
}

void append_scaler(std::string& out, const std::optional<FeatureScaler>& scaler) {
    if (scaler) {
        out += "scaler 1\n";
        append_vector_line(out, "mean", scaler->mean);
        append_vector_line(out, "scale", scaler->scale);
    } else {
        out += "scaler 0\n";
    }
}

// Line-oriented cursor with positional error messages.
class Reader {
public:
    explicit Reader(const std::string& text) : lines_(split(text, '\n')) {}

    std::vector<std::string_view> next_tokens(const char* what) {
        while (line_ < lines_.size()) {
            std::string_view raw = lines_[line_++];
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (raw.empty()) continue;
            std::vector<std::string_view> tokens;
            for (auto piece : split(raw, ' ')) {
                if (!piece.empty()) tokens.push_back(piece);
            }
            if (!tokens.empty()) return tokens;
        }
        throw ParseError(std::string("model file: missing ") + what);
    }

    std::size_t line() const { return line_; }

private:
    std::vector<std::string_view> lines_;
    std::size_t line_ = 0;
};

double tok_double(Reader& reader, std::string_view token) {
    double v;
    if (!parse_double(token, v)) {
        throw ParseError("model file line " + std::to_string(reader.line()) +
                         ": bad number '" + std::string(token) + "'");
    }
    return v;
}

long tok_long(Reader& reader, std::string_view token) {
    long v;
    if (!parse_long(token, v)) {
        throw ParseError("model file line " + std::to_string(reader.line()) +
                         ": bad integer '" + std::string(token) + "'");
    }
    return v;
}

Eigen::VectorXd expect_vector(Reader& reader, const char* tag, Eigen::Index size) {
    const auto tokens = reader.next_tokens(tag);
    if (tokens[0] != tag || static_cast<Eigen::Index>(tokens.size()) != size + 1) {
        throw ParseError("model file line " + std::to_string(reader.line()) +
                         ": expected '" + tag + "' with " + std::to_string(size) +
                         " values");
    }
    Eigen::VectorXd v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = tok_double(reader, tokens[i + 1]);
    return v;
}

std::optional<FeatureScaler> read_scaler(Reader& reader, Eigen::Index p) {
    const auto tokens = reader.next_tokens("scaler flag");
    if (tokens.size() != 2 || tokens[0] != "scaler") {
        throw ParseError("model file line " + std::to_string(reader.line()) +
                         ": expected 'scaler 0|1'");
    }
    if (tokens[1] == "0") return std::nullopt;
    FeatureScaler scaler;
    scaler.mean = expect_vector(reader, "mean", p);
    scaler.scale = expect_vector(reader, "scale", p);
    return scaler;
}

}  // namespace

std::string serialize_network(const Network& net,
                              const std::optional<FeatureScaler>& scaler) {
    net.validate();
    std::string out = "survnn-model 1 nn\n";
    const std::size_t layers = net.hidden.size() + 1;
    out += "layers " + std::to_string(layers) + "\n";
    out += "widths " + std::to_string(net.input_width());
    for (const DenseLayer& layer : net.hidden) {
        out += ' ';
        out += std::to_string(layer.fan_out());
    }
    out += " 1\nactivations";
    for (const DenseLayer& layer : net.hidden) {
        out += ' ';
        out += activation_name(layer.activation);
    }
    out += " linear\n";
    append_scaler(out, scaler);
    std::size_t index = 0;
    auto emit_layer = [&](const DenseLayer& layer) {
        out += "layer " + std::to_string(index++) + " " +
               std::to_string(layer.fan_out()) + " " +
               std::to_string(layer.fan_in()) + "\n";
        append_matrix_rows(out, layer.weights);
        append_vector_line(out, "bias", layer.bias);
    };
    for (const DenseLayer& layer : net.hidden) emit_layer(layer);
    emit_layer(net.risk_head);
    return out;
}

std::string serialize_coxnet(const ElasticNetCoxModel& model,
                             const std::optional<FeatureScaler>& scaler) {
    std::string out = "survnn-model 1 coxnet\n";
    out += "p " + std::to_string(model.coefficients.size()) + "\n";
    out += "lambda " + format_double(model.lambda) + "\n";
    out += "alpha " + format_double(model.alpha) + "\n";
    append_scaler(out, scaler);
    append_vector_line(out, "coefficients", model.coefficients);
    return out;
}

SavedModel parse_model(const std::string& text) {
    Reader reader(text);
    const auto header = reader.next_tokens("header");
    if (header.size() != 3 || header[0] != "survnn-model") {
        throw ParseError("model file: bad header");
    }
    if (header[1] != "1") {
        throw ParseError("model file: unsupported version '" + std::string(header[1]) + "'");
    }

    SavedModel model;
    model.kind = std::string(header[2]);
    if (model.kind == "coxnet") {
        const auto p_line = reader.next_tokens("p");
        if (p_line.size() != 2 || p_line[0] != "p") {
            throw ParseError("model file: expected 'p <count>'");
        }
        const long p = tok_long(reader, p_line[1]);
        ElasticNetCoxModel fit;
        const auto lambda_line = reader.next_tokens("lambda");
        if (lambda_line.size() != 2 || lambda_line[0] != "lambda") {
            throw ParseError("model file: expected 'lambda <value>'");
        }
        fit.lambda = tok_double(reader, lambda_line[1]);
        const auto alpha_line = reader.next_tokens("alpha");
        if (alpha_line.size() != 2 || alpha_line[0] != "alpha") {
            throw ParseError("model file: expected 'alpha <value>'");
        }
        fit.alpha = tok_double(reader, alpha_line[1]);
        model.scaler = read_scaler(reader, p);
        fit.coefficients = expect_vector(reader, "coefficients", p);
        model.coxnet = std::move(fit);
        return model;
    }
    if (model.kind != "nn") {
        throw ParseError("model file: unknown kind '" + model.kind + "'");
    }

    const auto layers_line = reader.next_tokens("layers");
    if (layers_line.size() != 2 || layers_line[0] != "layers") {
        throw ParseError("model file: expected 'layers <count>'");
    }
    const long layers = tok_long(reader, layers_line[1]);
    if (layers < 1) throw ParseError("model file: layer count must be >= 1");

    const auto widths_line = reader.next_tokens("widths");
    if (widths_line[0] != "widths" ||
        static_cast<long>(widths_line.size()) != layers + 2) {
        throw ParseError("model file: expected 'widths' with " +
                         std::to_string(layers + 1) + " values");
    }
    std::vector<long> widths;
    for (std::size_t i = 1; i < widths_line.size(); ++i) {
        widths.push_back(tok_long(reader, widths_line[i]));
    }

    const auto act_line = reader.next_tokens("activations");
    if (act_line[0] != "activations" ||
        static_cast<long>(act_line.size()) != layers + 1) {
        throw ParseError("model file: expected 'activations' with " +
                         std::to_string(layers) + " names");
    }
    std::vector<Activation> activations;
    for (std::size_t i = 1; i < act_line.size(); ++i) {
        activations.push_back(activation_from_name(std::string(act_line[i])));
    }

    model.scaler = read_scaler(reader, widths.front());

    Network net;
    for (long k = 0; k < layers; ++k) {
        const auto layer_line = reader.next_tokens("layer");
        if (layer_line.size() != 4 || layer_line[0] != "layer" ||
            tok_long(reader, layer_line[1]) != k) {
            throw ParseError("model file line " + std::to_string(reader.line()) +
                             ": expected 'layer " + std::to_string(k) + " rows cols'");
        }
        const long rows = tok_long(reader, layer_line[2]);
        const long cols = tok_long(reader, layer_line[3]);
        if (rows != widths[k + 1] || cols != widths[k]) {
            throw ParseError("model file: layer " + std::to_string(k) +
                             " shape disagrees with widths header");
        }
        DenseLayer layer;
        layer.activation = activations[k];
        layer.weights.resize(rows, cols);
        for (long r = 0; r < rows; ++r) {
            const auto row = reader.next_tokens("weight row");
            if (static_cast<long>(row.size()) != cols) {
                throw ParseError("model file line " + std::to_string(reader.line()) +
                                 ": weight row needs " + std::to_string(cols) +
                                 " values");
            }
            for (long c = 0; c < cols; ++c) {
                layer.weights(r, c) = tok_double(reader, row[c]);
            }
        }
        layer.bias = expect_vector(reader, "bias", rows);
        if (k + 1 < layers) {
            net.hidden.push_back(std::move(layer));
        } else {
            net.risk_head = std::move(layer);
        }
    }
    net.validate();
    model.network = std::move(net);
    return model;
}

void save_model_file(const std::string& path, const std::string& serialized) {
    write_text_file_atomic(path, serialized);
}

SavedModel load_model_file(const std::string& path) {
    return parse_model(read_text_file(path));
}

}  // namespace survnn
