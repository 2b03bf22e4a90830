#include "rpboost/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "rpboost/errors.hpp"
#include "rpboost/text.hpp"

namespace rpboost {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_double(std::string_view tok, double& out) {
    // from_chars rejects an explicit plus sign, but "+1" labels are the norm
    // in libsvm files and harmless in CSV fields.
    if (tok.size() >= 2 && tok.front() == '+' && tok[1] != '+' &&
        tok[1] != '-') {
        tok.remove_prefix(1);
    }
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(DataError::Kind::MissingFile,
                        "cannot open file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// Header heuristic: the first row is a header iff some field outside the
// label column is not a number (label tokens are allowed to be words).
bool looks_like_header(const std::vector<std::string_view>& fields,
                       std::size_t label_column) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i == label_column) continue;
        double v;
        if (!parse_double(fields[i], v)) return true;
    }
    return false;
}

void check_two_classes_loaded(const Vector& labels, const std::string& path) {
    bool pos = false, neg = false;
    for (double y : labels) (y > 0 ? pos : neg) = true;
    if (!pos || !neg) {
        throw DataError(DataError::Kind::SingleClass,
                        path + ": all instances have the same class");
    }
}

}  // namespace

Dataset load_csv(const std::string& path, std::size_t label_column,
                 const std::string& positive_label) {
    const auto lines = read_lines(path);

    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> line_numbers;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = trim(lines[ln]);
        if (line.empty()) continue;
        rows.push_back(split_fields(line, ','));
        line_numbers.push_back(ln + 1);
    }
    if (rows.empty()) {
        throw DataError(DataError::Kind::EmptyFile, path + ": no data rows");
    }

    std::size_t first = 0;
    if (looks_like_header(rows[0], label_column)) first = 1;
    if (first >= rows.size()) {
        throw DataError(DataError::Kind::EmptyFile,
                        path + ": only a header row, no data");
    }

    const std::size_t width = rows[first].size();
    if (label_column >= width) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": label column " +
                            std::to_string(label_column) + " out of range (" +
                            std::to_string(width) + " fields)");
    }
    const std::size_t n = rows.size() - first;
    const std::size_t d = width - 1;

    Dataset ds;
    ds.features = DenseMatrix(n, d);
    ds.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& fields = rows[first + i];
        const std::size_t ln = line_numbers[first + i];
        if (fields.size() != width) {
            throw DataError(DataError::Kind::RaggedRow,
                            path + ": line " + std::to_string(ln) +
                                ": expected " + std::to_string(width) +
                                " fields, got " +
                                std::to_string(fields.size()));
        }
        std::size_t col = 0;
        for (std::size_t f = 0; f < width; ++f) {
            if (f == label_column) {
                ds.labels[i] = (fields[f] == positive_label) ? 1.0 : -1.0;
                continue;
            }
            double v;
            if (!parse_double(fields[f], v) || !std::isfinite(v)) {
                throw DataError(DataError::Kind::BadNumber,
                                path + ": line " + std::to_string(ln) +
                                    ": bad numeric field '" +
                                    std::string(fields[f]) + "'");
            }
            ds.features(i, col++) = v;
        }
    }
    check_two_classes_loaded(ds.labels, path);
    return ds;
}

DenseMatrix load_features_csv(const std::string& path) {
    const auto lines = read_lines(path);
    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> line_numbers;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = trim(lines[ln]);
        if (line.empty()) continue;
        rows.push_back(split_fields(line, ','));
        line_numbers.push_back(ln + 1);
    }
    if (rows.empty()) {
        throw DataError(DataError::Kind::EmptyFile, path + ": no data rows");
    }
    std::size_t first = 0;
    {
        double v;
        bool numeric = true;
        for (const auto& f : rows[0]) numeric = numeric && parse_double(f, v);
        if (!numeric) first = 1;
    }
    if (first >= rows.size()) {
        throw DataError(DataError::Kind::EmptyFile,
                        path + ": only a header row, no data");
    }
    const std::size_t width = rows[first].size();
    DenseMatrix x(rows.size() - first, width);
    for (std::size_t i = first; i < rows.size(); ++i) {
        if (rows[i].size() != width) {
            throw DataError(DataError::Kind::RaggedRow,
                            path + ": line " + std::to_string(line_numbers[i]) +
                                ": expected " + std::to_string(width) +
                                " fields, got " +
                                std::to_string(rows[i].size()));
        }
        for (std::size_t f = 0; f < width; ++f) {
            double v;
            if (!parse_double(rows[i][f], v) || !std::isfinite(v)) {
                throw DataError(DataError::Kind::BadNumber,
                                path + ": line " +
                                    std::to_string(line_numbers[i]) +
                                    ": bad numeric field '" +
                                    std::string(rows[i][f]) + "'");
            }
            x(i - first, f) = v;
        }
    }
    return x;
}

Dataset load_libsvm(const std::string& path) {
    const auto lines = read_lines(path);

    struct Row {
        double label;
        std::vector<std::pair<std::size_t, double>> entries;
    };
    std::vector<Row> rows;
    std::size_t max_index = 0;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string_view line = lines[ln];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ": line " + std::to_string(ln + 1);

        std::istringstream ss{std::string(line)};
        std::string tok;
        ss >> tok;
        Row row;
        if (!parse_double(tok, row.label)) {
            throw DataError(DataError::Kind::BadNumber,
                            where + ": bad label '" + tok + "'");
        }
        row.label = row.label > 0 ? 1.0 : -1.0;

        std::size_t prev_index = 0;
        while (ss >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 ||
                colon + 1 == tok.size()) {
                throw DataError(DataError::Kind::BadFormat,
                                where + ": malformed pair '" + tok + "'");
            }
            std::size_t index = 0;
            {
                const char* f = tok.data();
                const char* l = tok.data() + colon;
                auto [p, ec] = std::from_chars(f, l, index);
                if (ec != std::errc{} || p != l || index < 1) {
                    throw DataError(DataError::Kind::BadFormat,
                                    where + ": bad feature index in '" + tok +
                                        "'");
                }
            }
            double value;
            if (!parse_double(std::string_view(tok).substr(colon + 1),
                              value) ||
                !std::isfinite(value)) {
                throw DataError(DataError::Kind::BadNumber,
                                where + ": bad feature value in '" + tok +
                                    "'");
            }
            if (index <= prev_index) {
                throw DataError(DataError::Kind::NonIncreasingIndex,
                                where + ": index " + std::to_string(index) +
                                    " not strictly increasing");
            }
            prev_index = index;
            row.entries.emplace_back(index, value);
            max_index = std::max(max_index, index);
        }
        rows.push_back(std::move(row));
    }

    if (rows.empty()) {
        throw DataError(DataError::Kind::EmptyFile, path + ": no data lines");
    }
    if (max_index == 0) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": no features on any line");
    }

    Dataset ds;
    ds.features = DenseMatrix(rows.size(), max_index);
    ds.labels.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ds.labels[i] = rows[i].label;
        for (const auto& [index, value] : rows[i].entries) {
            ds.features(i, index - 1) = value;
        }
    }
    return ds;
}

SplitIndices split_indices(std::size_t n, const Vector& labels,
                           const SplitSpec& spec) {
    if (n < 2) throw ValueError("split: need at least 2 instances");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ValueError("split: train_fraction must be in (0,1), got " +
                         std::to_string(spec.train_fraction));
    }
    Rng rng(spec.seed);
    SplitIndices out;

    if (!spec.stratify) {
        const auto perm = shuffled_indices(rng, n);
        const auto n_train = static_cast<std::size_t>(
            std::floor(spec.train_fraction * static_cast<double>(n) + 0.5));
        if (n_train == 0 || n_train >= n) {
            throw ValueError("split: fraction " +
                             std::to_string(spec.train_fraction) + " leaves " +
                             (n_train == 0 ? "train" : "test") +
                             " side empty for N=" + std::to_string(n));
        }
        out.train.assign(perm.begin(), perm.begin() + n_train);
        out.test.assign(perm.begin() + n_train, perm.end());
        return out;
    }

    for (int sign = 0; sign < 2; ++sign) {
        std::vector<std::size_t> cls;
        for (std::size_t i = 0; i < n; ++i) {
            if ((labels[i] > 0) == (sign == 0)) cls.push_back(i);
        }
        if (cls.empty()) continue;
        if (cls.size() > 1) {
            const auto perm = shuffled_indices(rng, cls.size());
            std::vector<std::size_t> shuffled(cls.size());
            for (std::size_t i = 0; i < cls.size(); ++i) {
                shuffled[i] = cls[perm[i]];
            }
            cls = std::move(shuffled);
        }
        auto k = static_cast<std::size_t>(std::floor(
            spec.train_fraction * static_cast<double>(cls.size()) + 0.5));
        if (cls.size() >= 2) k = std::clamp<std::size_t>(k, 1, cls.size() - 1);
        else k = 1;  // a singleton class goes to train
        out.train.insert(out.train.end(), cls.begin(), cls.begin() + k);
        out.test.insert(out.test.end(), cls.begin() + k, cls.end());
    }
    if (out.train.empty() || out.test.empty()) {
        throw ValueError("split: stratified split leaves a side empty");
    }
    // Remove the by-class ordering.
    for (auto* part : {&out.train, &out.test}) {
        if (part->size() < 2) continue;
        const auto perm = shuffled_indices(rng, part->size());
        std::vector<std::size_t> shuffled(part->size());
        for (std::size_t i = 0; i < part->size(); ++i) {
            shuffled[i] = (*part)[perm[i]];
        }
        *part = std::move(shuffled);
    }
    return out;
}

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.features = DenseMatrix(idx.size(), ds.feature_count());
    out.labels.resize(idx.size());
    if (!ds.names.empty()) out.names.resize(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t src = idx[i];
        if (src >= ds.instance_count()) {
            throw ValueError("take_rows: index " + std::to_string(src) +
                             " out of range for " +
                             std::to_string(ds.instance_count()) + " rows");
        }
        std::copy_n(ds.features.row(src), ds.feature_count(),
                    out.features.row(i));
        out.labels[i] = ds.labels[src];
        if (!ds.names.empty()) out.names[i] = ds.names[src];
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
    const auto idx = split_indices(ds.instance_count(), ds.labels, spec);
    return {take_rows(ds, idx.train), take_rows(ds, idx.test)};
}

Dataset synth_gaussian(Rng& rng, std::size_t n_per_class, std::size_t d,
                       std::size_t informative, double shift) {
    if (n_per_class == 0) throw ValueError("synth_gaussian: n_per_class == 0");
    if (d == 0) throw ValueError("synth_gaussian: d == 0");
    if (informative > d) {
        throw ValueError("synth_gaussian: informative " +
                         std::to_string(informative) + " > d " +
                         std::to_string(d));
    }
    if (!(shift > 0.0)) {
        throw ValueError("synth_gaussian: shift must be > 0");
    }
    Dataset ds;
    ds.features = DenseMatrix(2 * n_per_class, d);
    ds.labels.resize(2 * n_per_class);
    for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
        const double y = i < n_per_class ? 1.0 : -1.0;
        ds.labels[i] = y;
        double* row = ds.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double mean = j < informative ? y * shift : 0.0;
            row[j] = rng.normal(mean, 1.0);
        }
    }
    return ds;
}

ClassCounts class_counts(const Dataset& ds) {
    ClassCounts c;
    for (double y : ds.labels) ++(y > 0 ? c.positive : c.negative);
    return c;
}

void require_two_classes(const Dataset& ds) {
    const auto c = class_counts(ds);
    if (c.positive == 0 || c.negative == 0) {
        throw DataError(
            DataError::Kind::SingleClass,
            "training set must contain both classes (got " +
            std::to_string(c.positive) + " positive, " +
            std::to_string(c.negative) + " negative)");
    }
}

void standardize(Dataset& train, Dataset* test) {
    const std::size_t n = train.instance_count();
    const std::size_t d = train.feature_count();
    if (n == 0) return;
    Vector mean(d, 0.0), sd(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = train.features.row(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = train.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double c = row[j] - mean[j];
            sd[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        sd[j] = std::sqrt(sd[j] / static_cast<double>(n));
        if (sd[j] == 0.0) sd[j] = 1.0;  // constant feature: center only
    }
    auto apply = [&](Dataset& ds) {
        for (std::size_t i = 0; i < ds.instance_count(); ++i) {
            double* row = ds.features.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                row[j] = (row[j] - mean[j]) / sd[j];
            }
        }
    };
    apply(train);
    if (test) apply(*test);
}

Dataset with_intercept(const Dataset& ds) {
    Dataset out;
    const std::size_t d = ds.feature_count();
    out.features = DenseMatrix(ds.instance_count(), d + 1);
    out.labels = ds.labels;
    out.names = ds.names;
    for (std::size_t i = 0; i < ds.instance_count(); ++i) {
        std::copy_n(ds.features.row(i), d, out.features.row(i));
        out.features(i, d) = 1.0;
    }
    return out;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::string text;
    const std::size_t d = ds.feature_count();
    for (std::size_t i = 0; i < ds.instance_count(); ++i) {
        text += ds.labels[i] > 0 ? "1" : "-1";
        const double* row = ds.features.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            text += ',';
            append_double(text, row[j]);
        }
        text += '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(DataError::Kind::MissingFile,
                        "cannot write file: " + path);
    }
    out << text;
}

}  // namespace rpboost
