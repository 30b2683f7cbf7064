#include "survnn/config.hpp"

#include <functional>
#include <map>

#include "survnn/errors.hpp"
#include "survnn/textio.hpp"

namespace survnn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void line_error(std::size_t line_no, const std::string& what) {
    throw ParseError("config line " + std::to_string(line_no) + ": " + what);
}

struct Setter {
    std::function<void(AppConfig&, std::string_view, std::size_t)> apply;
};

template <typename Assign>
Setter double_key(Assign assign) {
    return {[assign](AppConfig& c, std::string_view value, std::size_t line_no) {
        double v;
        if (!parse_double(value, v)) line_error(line_no, "expected a real number");
        assign(c, v);
    }};
}

template <typename Assign>
Setter int_key(Assign assign) {
    return {[assign](AppConfig& c, std::string_view value, std::size_t line_no) {
        long v;
        if (!parse_long(value, v)) line_error(line_no, "expected an integer");
        assign(c, v);
    }};
}

template <typename Assign>
Setter bool_key(Assign assign) {
    return {[assign](AppConfig& c, std::string_view value, std::size_t line_no) {
        if (value == "true" || value == "1") assign(c, true);
        else if (value == "false" || value == "0") assign(c, false);
        else line_error(line_no, "expected true or false");
    }};
}

using KeyMap = std::map<std::string, Setter, std::less<>>;

const std::map<std::string, KeyMap, std::less<>>& schema() {
    static const std::map<std::string, KeyMap, std::less<>> s = {
        {"nn",
         {
             {"hidden_layers", int_key([](AppConfig& c, long v) { c.nn_hidden_layers = static_cast<int>(v); })},
             {"hidden_units", int_key([](AppConfig& c, long v) { c.nn_hidden_units = static_cast<int>(v); })},
             {"activation", {[](AppConfig& c, std::string_view v, std::size_t line_no) {
                  if (v == "linear") line_error(line_no, "hidden activation must be sigmoid or relu");
                  try {
                      c.nn_activation = activation_from_name(std::string(v));
                  } catch (const InvalidInputError&) {
                      line_error(line_no, "unknown activation '" + std::string(v) + "'");
                  }
              }}},
             {"pretrain_learning_rate", double_key([](AppConfig& c, double v) { c.train.pretrain_learning_rate = v; })},
             {"finetune_learning_rate", double_key([](AppConfig& c, double v) { c.train.finetune_learning_rate = v; })},
             {"pretrain_epochs", int_key([](AppConfig& c, long v) { c.train.pretrain_epochs = static_cast<int>(v); })},
             {"finetune_epochs", int_key([](AppConfig& c, long v) { c.train.finetune_epochs = static_cast<int>(v); })},
             {"corruption_rate", double_key([](AppConfig& c, double v) { c.train.corruption_rate = v; })},
             {"minibatch_size_pretrain", int_key([](AppConfig& c, long v) { c.train.minibatch_size_pretrain = static_cast<int>(v); })},
             {"rng_seed", int_key([](AppConfig& c, long v) { c.train.rng_seed = static_cast<std::uint64_t>(v); })},
             {"l2_penalty", double_key([](AppConfig& c, double v) { c.train.l2_penalty = v; })},
         }},
        {"coxnet",
         {
             {"lambda", double_key([](AppConfig& c, double v) { c.coxnet_lambda = v; })},
             {"alpha", double_key([](AppConfig& c, double v) { c.coxnet_alpha = v; })},
             {"tol", double_key([](AppConfig& c, double v) { c.coxnet_tol = v; })},
             {"max_iter", int_key([](AppConfig& c, long v) { c.coxnet_max_iter = static_cast<int>(v); })},
             {"standardize", bool_key([](AppConfig& c, bool v) { c.coxnet_standardize = v; })},
         }},
        {"synthetic",
         {
             {"n", int_key([](AppConfig& c, long v) { c.synthetic.n = static_cast<int>(v); })},
             {"p", int_key([](AppConfig& c, long v) { c.synthetic.p = static_cast<int>(v); })},
             {"risk_kind", {[](AppConfig& c, std::string_view v, std::size_t line_no) {
                  if (v == "linear") c.synthetic.risk_kind = SyntheticSpec::RiskKind::kLinear;
                  else if (v == "nonlinear") c.synthetic.risk_kind = SyntheticSpec::RiskKind::kNonlinear;
                  else line_error(line_no, "risk_kind must be linear or nonlinear");
              }}},
             {"sparsity", int_key([](AppConfig& c, long v) { c.synthetic.sparsity = static_cast<int>(v); })},
             {"censoring_rate_target", double_key([](AppConfig& c, double v) { c.synthetic.censoring_rate_target = v; })},
             {"seed", int_key([](AppConfig& c, long v) { c.synthetic.seed = static_cast<std::uint64_t>(v); })},
         }},
        {"tune",
         {
             {"budget", int_key([](AppConfig& c, long v) { c.tune_budget = static_cast<int>(v); })},
             {"init_trials", int_key([](AppConfig& c, long v) { c.tune_init_trials = static_cast<int>(v); })},
         }},
        {"benchmark",
         {
             {"permutations", int_key([](AppConfig& c, long v) { c.benchmark_permutations = static_cast<int>(v); })},
             {"base_seed", int_key([](AppConfig& c, long v) { c.benchmark_base_seed = static_cast<std::uint64_t>(v); })},
         }},
    };
    return s;
}

}  // namespace

AppConfig parse_config_text(const std::string& text) {
    AppConfig config;
    const auto lines = split(text, '\n');
    const KeyMap* section = nullptr;
    std::string section_name;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        std::string_view line = lines[i];
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') line_error(line_no, "unterminated section header");
            section_name = std::string(trim(line.substr(1, line.size() - 2)));
            const auto it = schema().find(section_name);
            if (it == schema().end()) {
                line_error(line_no, "unknown section [" + section_name + "]");
            }
            section = &it->second;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            line_error(line_no, "expected key = value");
        }
        if (!section) line_error(line_no, "key outside any [section]");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = section->find(key);
        if (it == section->end()) {
            line_error(line_no, "unknown key '" + key + "' in [" + section_name + "]");
        }
        it->second.apply(config, value, line_no);
    }
    return config;
}

AppConfig load_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::string config_to_text(const AppConfig& c) {
    std::string out;
    out += "[nn]\n";
    out += "hidden_layers = " + std::to_string(c.nn_hidden_layers) + "\n";
    out += "hidden_units = " + std::to_string(c.nn_hidden_units) + "\n";
    out += std::string("activation = ") + activation_name(c.nn_activation) + "\n";
    out += "pretrain_learning_rate = " + format_double(c.train.pretrain_learning_rate) + "\n";
    out += "finetune_learning_rate = " + format_double(c.train.finetune_learning_rate) + "\n";
    out += "pretrain_epochs = " + std::to_string(c.train.pretrain_epochs) + "\n";
    out += "finetune_epochs = " + std::to_string(c.train.finetune_epochs) + "\n";
    out += "corruption_rate = " + format_double(c.train.corruption_rate) + "\n";
    out += "minibatch_size_pretrain = " + std::to_string(c.train.minibatch_size_pretrain) + "\n";
    out += "rng_seed = " + std::to_string(c.train.rng_seed) + "\n";
    out += "l2_penalty = " + format_double(c.train.l2_penalty) + "\n";
    out += "\n[coxnet]\n";
    out += "lambda = " + format_double(c.coxnet_lambda) + "\n";
    out += "alpha = " + format_double(c.coxnet_alpha) + "\n";
    out += "tol = " + format_double(c.coxnet_tol) + "\n";
    out += "max_iter = " + std::to_string(c.coxnet_max_iter) + "\n";
    out += std::string("standardize = ") + (c.coxnet_standardize ? "true" : "false") + "\n";
    out += "\n[synthetic]\n";
    out += "n = " + std::to_string(c.synthetic.n) + "\n";
    out += "p = " + std::to_string(c.synthetic.p) + "\n";
    out += std::string("risk_kind = ") +
           (c.synthetic.risk_kind == SyntheticSpec::RiskKind::kLinear ? "linear"
                                                                      : "nonlinear") +
           "\n";
    out += "sparsity = " + std::to_string(c.synthetic.sparsity) + "\n";
    out += "censoring_rate_target = " + format_double(c.synthetic.censoring_rate_target) + "\n";
    out += "seed = " + std::to_string(c.synthetic.seed) + "\n";
    out += "\n[tune]\n";
    out += "budget = " + std::to_string(c.tune_budget) + "\n";
    out += "init_trials = " + std::to_string(c.tune_init_trials) + "\n";
    out += "\n[benchmark]\n";
    out += "permutations = " + std::to_string(c.benchmark_permutations) + "\n";
    out += "base_seed = " + std::to_string(c.benchmark_base_seed) + "\n";
    return out;
}

void save_config_file(const AppConfig& config, const std::string& path) {
    write_text_file_atomic(path, config_to_text(config));
}

}  // namespace survnn
