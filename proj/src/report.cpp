#include "survnn/report.hpp"

#include <cmath>
#include <cstdio>

#include "survnn/errors.hpp"
#include "survnn/textio.hpp"

namespace survnn {

std::string report_table(const EvalReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-12s %8s %8s %6s  %s\n", "method", "mean",
                  "std", "n_ok", "per-permutation test CI");
    out += line;
    for (const MethodResult& result : report.methods) {
        int ok = 0;
        std::string cis;
        for (double ci : result.test_ci) {
            if (!cis.empty()) cis += ' ';
            if (std::isfinite(ci)) {
                ++ok;
                char buf[16];
                std::snprintf(buf, sizeof(buf), "%.4f", ci);
                cis += buf;
            } else {
                cis += "failed";
            }
        }
        if (result.failed) {
            std::snprintf(line, sizeof(line), "%-12s %8s %8s %6d  %s\n",
                          result.method.c_str(), "failed", "-", ok, cis.c_str());
        } else {
            std::snprintf(line, sizeof(line), "%-12s %8.4f %8.4f %6d  %s\n",
                          result.method.c_str(), result.mean_ci, result.std_ci, ok,
                          cis.c_str());
        }
        out += line;
    }
    return out;
}

std::string report_machine_lines(const EvalReport& report) {
    std::string out = "survnn-report,1\n";
    out += "permutations," + std::to_string(report.permutations) + "\n";
    out += "base_seed," + std::to_string(report.base_seed) + "\n";
    for (const MethodResult& result : report.methods) {
        for (std::size_t perm = 0; perm < result.test_ci.size(); ++perm) {
            const double ci = result.test_ci[perm];
            const std::uint64_t seed =
                report.base_seed + static_cast<std::uint64_t>(perm);
            out += "row," + result.method + ',' + std::to_string(perm) + ',' +
                   std::to_string(seed) + ',' +
                   (std::isfinite(ci) ? "ok" : "failed") + ',' +
                   (std::isfinite(ci) ? format_double(ci) : "nan") + ',' +
                   tuned_params_to_string(result.chosen[perm]) + '\n';
        }
        out += "summary," + result.method + ',' +
               (result.failed ? "nan" : format_double(result.mean_ci)) + ',' +
               (result.failed ? "nan" : format_double(result.std_ci)) + ',' +
               (result.failed ? "1" : "0") + '\n';
    }
    return out;
}

EvalReport parse_report_lines(const std::string& text) {
    EvalReport report;
    const auto lines = split(text, '\n');
    auto fail = [](std::size_t line_no, const std::string& what) -> void {
        throw ParseError("report line " + std::to_string(line_no) + ": " + what);
    };

    MethodResult* current = nullptr;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string_view line = lines[i];
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        const std::size_t line_no = i + 1;
        if (cells[0] == "survnn-report") {
            if (cells.size() != 2 || cells[1] != "1") fail(line_no, "bad version");
        } else if (cells[0] == "permutations") {
            long v;
            if (cells.size() != 2 || !parse_long(cells[1], v)) fail(line_no, "bad count");
            report.permutations = static_cast<int>(v);
        } else if (cells[0] == "base_seed") {
            long v;
            if (cells.size() != 2 || !parse_long(cells[1], v)) fail(line_no, "bad seed");
            report.base_seed = static_cast<std::uint64_t>(v);
        } else if (cells[0] == "row") {
            if (cells.size() != 7) fail(line_no, "row needs 7 cells");
            const std::string method(cells[1]);
            if (!current || current->method != method) {
                report.methods.push_back({});
                current = &report.methods.back();
                current->method = method;
            }
            double ci;
            if (!parse_double(cells[5], ci, true)) fail(line_no, "bad test_ci");
            current->test_ci.push_back(ci);
            current->chosen.push_back(tuned_params_from_string(std::string(cells[6])));
        } else if (cells[0] == "summary") {
            if (cells.size() != 5) fail(line_no, "summary needs 5 cells");
            const std::string method(cells[1]);
            if (!current || current->method != method) {
                fail(line_no, "summary for unknown method '" + method + "'");
            }
            if (!parse_double(cells[2], current->mean_ci, true) ||
                !parse_double(cells[3], current->std_ci, true)) {
                fail(line_no, "bad summary stats");
            }
            current->failed = cells[4] == "1";
        } else {
            fail(line_no, "unknown record '" + std::string(cells[0]) + "'");
        }
    }
    return report;
}

}  // namespace survnn
