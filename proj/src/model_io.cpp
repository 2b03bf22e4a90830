#include "rpboost/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "rpboost/errors.hpp"
#include "rpboost/text.hpp"

namespace rpboost {

namespace {

constexpr std::string_view kMagic = "rpboost-model";
constexpr int kVersion = 1;

// to_chars writes infinities as "inf"/"-inf"; parse those explicitly since
// from_chars support for them varies.
bool parse_double(std::string_view tok, double& out) {
    if (tok == "inf") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    if (tok == "-inf") {
        out = -std::numeric_limits<double>::infinity();
        return true;
    }
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

bool parse_size(std::string_view tok, std::size_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

bool parse_u64(std::string_view tok, std::uint64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() &&
               (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
               line[i] != '\r') {
            ++i;
        }
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

const std::array<std::string, 5>& method_tokens() {
    static const std::array<std::string, 5> names = {
        "rrc", "rrc-boost", "rpboost", "rprrc", "stump-boost"};
    return names;
}

bool is_method_token(const std::string& name) {
    const auto& names = method_tokens();
    return std::find(names.begin(), names.end(), name) != names.end();
}

void save_model(const Ensemble& e, const std::string& path) {
    if (e.members.empty()) {
        throw ValueError("save_model: ensemble has no members");
    }
    if (!is_method_token(e.method)) {
        throw ValueError("save_model: unknown method '" + e.method + "'");
    }
    std::string text;
    text += kMagic;
    text += ' ';
    text += std::to_string(kVersion);
    text += ' ';
    text += e.method;
    text += ' ';
    text += std::to_string(e.config.rounds);
    text += ' ';
    append_double(text, e.config.lambda);
    text += ' ';
    text += std::to_string(e.config.subspace_dim);
    text += ' ';
    text += std::to_string(e.config.projections);
    text += ' ';
    text += std::to_string(e.config.seed);
    text += ' ';
    text += std::to_string(e.dim);
    text += '\n';

    for (const Member& m : e.members) {
        append_double(text, m.alpha);
        if (const auto* lc = std::get_if<LinearClassifier>(&m.learner)) {
            if (lc->beta.size() != e.dim) {
                throw DimensionError(
                    "save_model: member has " +
                    std::to_string(lc->beta.size()) +
                    " coefficients, ensemble dim is " + std::to_string(e.dim));
            }
            for (double c : lc->beta) {
                text += ' ';
                append_double(text, c);
            }
        } else {
            const auto& s = std::get<Stump>(m.learner);
            text += " stump ";
            text += std::to_string(s.feature);
            text += ' ';
            append_double(text, s.threshold);
            text += ' ';
            append_double(text, s.polarity);
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

Ensemble load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError(DataError::Kind::MissingFile,
                        "cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(DataError::Kind::EmptyFile, path + ": empty file");
    }

    const auto header = tokens_of(line);
    if (header.size() != 9 || header[0] != kMagic) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": not a model file (bad header)");
    }
    if (header[1] != std::to_string(kVersion)) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": unsupported format version '" +
                            std::string(header[1]) + "'");
    }

    Ensemble e;
    e.method = std::string(header[2]);
    if (!is_method_token(e.method)) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": unknown method '" + e.method + "'");
    }
    if (!parse_size(header[3], e.config.rounds) ||
        !parse_double(header[4], e.config.lambda) ||
        !parse_size(header[5], e.config.subspace_dim) ||
        !parse_size(header[6], e.config.projections) ||
        !parse_u64(header[7], e.config.seed) || !parse_size(header[8], e.dim)) {
        throw DataError(DataError::Kind::BadNumber,
                        path + ": unparseable header field");
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = tokens_of(line);
        if (toks.empty()) continue;
        const std::string where = path + ": line " + std::to_string(line_no);

        Member m;
        if (!parse_double(toks[0], m.alpha)) {
            throw DataError(DataError::Kind::BadNumber,
                            where + ": bad alpha '" + std::string(toks[0]) +
                                "'");
        }
        if (toks.size() >= 2 && toks[1] == "stump") {
            if (toks.size() != 5) {
                throw DataError(DataError::Kind::BadFormat,
                                where + ": stump member needs 5 fields, got " +
                                    std::to_string(toks.size()));
            }
            Stump s;
            if (!parse_size(toks[2], s.feature) ||
                !parse_double(toks[3], s.threshold) ||
                !parse_double(toks[4], s.polarity)) {
                throw DataError(DataError::Kind::BadNumber,
                                where + ": unparseable stump field");
            }
            if (s.feature >= e.dim ||
                (s.polarity != 1.0 && s.polarity != -1.0)) {
                throw DataError(DataError::Kind::BadFormat,
                                where + ": stump fields out of range");
            }
            m.learner = s;
        } else {
            if (toks.size() != 1 + e.dim) {
                throw DataError(DataError::Kind::BadFormat,
                                where + ": expected " + std::to_string(e.dim) +
                                    " coefficients, got " +
                                    std::to_string(toks.size() - 1));
            }
            LinearClassifier lc;
            lc.lambda = e.config.lambda;
            lc.beta.resize(e.dim);
            for (std::size_t i = 0; i < e.dim; ++i) {
                if (!parse_double(toks[1 + i], lc.beta[i])) {
                    throw DataError(DataError::Kind::BadNumber,
                                    where + ": bad coefficient '" +
                                        std::string(toks[1 + i]) + "'");
                }
            }
            m.learner = std::move(lc);
        }
        e.members.push_back(std::move(m));
    }

    if (e.members.empty()) {
        throw DataError(DataError::Kind::BadFormat,
                        path + ": model has no members");
    }
    return e;
}

}  // namespace rpboost
