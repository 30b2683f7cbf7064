#include "survnn/dataset.hpp"

#include <cmath>
#include <set>

#include "survnn/errors.hpp"
#include "survnn/textio.hpp"

namespace survnn {

void Dataset::validate() const {
    labels.validate();
    const int count = n();
    if (labels.size() != count || features.rows() != count) {
        throw InvalidInputError("dataset: inconsistent sample counts");
    }
    if (static_cast<int>(feature_names.size()) != p()) {
        throw InvalidInputError("dataset: feature name count mismatch");
    }
    std::set<std::string> seen;
    for (const std::string& name : feature_names) {
        if (!seen.insert(name).second) {
            throw InvalidInputError("dataset: duplicate feature name '" + name + "'");
        }
    }
    if (!features.allFinite()) {
        throw InvalidInputError("dataset: non-finite feature value");
    }
}

Dataset Dataset::subset(const std::vector<int>& rows) const {
    Dataset out;
    out.feature_names = feature_names;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out.sample_ids.push_back(sample_ids[rows[r]]);
        out.features.row(static_cast<Eigen::Index>(r)) = features.row(rows[r]);
        out.labels.times.push_back(labels.times[rows[r]]);
        out.labels.events.push_back(labels.events[rows[r]]);
    }
    return out;
}

namespace {

[[noreturn]] void cell_error(std::size_t row, const std::string& column,
                             const std::string& what) {
    throw ParseError("csv row " + std::to_string(row) + ", column '" + column +
                     "': " + what);
}

}  // namespace

Dataset load_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<std::string_view> lines = split(text, '\n');
    // Tolerate a trailing newline.
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) {
        throw ParseError("csv: empty file: " + path);
    }

    auto fields = [](std::string_view line) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return split(line, ',');
    };

    const auto header = fields(lines[0]);
    if (header.size() < 3 || header[0] != "id" || header[1] != "time" ||
        header[2] != "event") {
        throw ParseError("csv row 1: header must start with id,time,event");
    }
    Dataset dataset;
    for (std::size_t c = 3; c < header.size(); ++c) {
        if (header[c].empty()) {
            throw ParseError("csv row 1: empty feature name in column " +
                             std::to_string(c + 1));
        }
        dataset.feature_names.emplace_back(header[c]);
    }

    const std::size_t p = dataset.feature_names.size();
    const std::size_t n = lines.size() - 1;
    if (n == 0) {
        throw ParseError("csv: no data rows in " + path);
    }
    dataset.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));

    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t row_no = r + 2;  // 1-based, header is row 1
        const auto cells = fields(lines[r + 1]);
        if (cells.size() != p + 3) {
            throw ParseError("csv row " + std::to_string(row_no) + ": expected " +
                             std::to_string(p + 3) + " cells, found " +
                             std::to_string(cells.size()));
        }
        if (cells[0].empty()) cell_error(row_no, "id", "empty id");
        dataset.sample_ids.emplace_back(cells[0]);

        double time;
        if (!parse_double(cells[1], time)) {
            cell_error(row_no, "time", "not a finite real");
        }
        if (time <= 0.0) cell_error(row_no, "time", "time must be positive");
        dataset.labels.times.push_back(time);

        if (cells[2] == "0") {
            dataset.labels.events.push_back(0);
        } else if (cells[2] == "1") {
            dataset.labels.events.push_back(1);
        } else {
            cell_error(row_no, "event", "event must be 0 or 1");
        }

        for (std::size_t c = 0; c < p; ++c) {
            double v;
            if (!parse_double(cells[c + 3], v)) {
                cell_error(row_no, dataset.feature_names[c],
                           "missing or non-finite value");
            }
            dataset.features(static_cast<Eigen::Index>(r),
                             static_cast<Eigen::Index>(c)) = v;
        }
    }
    dataset.validate();
    return dataset;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    dataset.validate();
    std::string out = "id,time,event";
    for (const std::string& name : dataset.feature_names) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (int r = 0; r < dataset.n(); ++r) {
        out += dataset.sample_ids[r];
        out += ',';
        out += format_double(dataset.labels.times[r]);
        out += dataset.labels.events[r] ? ",1" : ",0";
        for (int c = 0; c < dataset.p(); ++c) {
            out += ',';
            out += format_double(dataset.features(r, c));
        }
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

}  // namespace survnn
