#include "rpboost/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <utility>

#include "json.hpp"
#include "rpboost/errors.hpp"
#include "rpboost/learners.hpp"
#include "rpboost/text.hpp"

namespace rpboost {

namespace {

constexpr std::size_t kMethodCount = 5;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::string environment_note() {
#if defined(__clang__)
    std::string note = "clang " __VERSION__;
#elif defined(__GNUC__)
    std::string note = "gcc " __VERSION__;
#else
    std::string note = "compiler " __VERSION__;
#endif
#if defined(__linux__)
    note += ", linux";
#elif defined(__APPLE__)
    note += ", macos";
#elif defined(_WIN32)
    note += ", windows";
#endif
    return note;
}

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

Ensemble wrap_single(const std::string& method, LinearClassifier c,
                     const BoostConfig& cfg, std::size_t dim) {
    Ensemble e;
    e.members.push_back(Member{1.0, std::move(c)});
    e.config = cfg;
    e.method = method;
    e.dim = dim;
    return e;
}

std::string two_decimals(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

const std::string& method_name(Method m) {
    static const std::string names[kMethodCount] = {
        "rrc", "rrc-boost", "rpboost", "rprrc", "stump-boost"};
    return names[static_cast<std::size_t>(m)];
}

Method method_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kMethodCount; ++i) {
        const auto m = static_cast<Method>(i);
        if (method_name(m) == name) return m;
    }
    throw ValueError("unknown method '" + name +
                     "' (expected rrc, rrc-boost, rpboost, rprrc or "
                     "stump-boost)");
}

Dataset load_source(const DataSource& source, std::uint64_t seed) {
    switch (source.kind) {
        case DataSource::Kind::CsvFile:
            return load_csv(source.path, source.label_column,
                            source.positive_label);
        case DataSource::Kind::LibsvmFile:
            return load_libsvm(source.path);
        case DataSource::Kind::Synthetic: {
            Rng rng(seed);
            return synth_gaussian(rng, source.n_per_class, source.d,
                                  source.informative, source.shift);
        }
    }
    throw ValueError("load_source: bad source kind");
}

std::string describe_source(const DataSource& source) {
    switch (source.kind) {
        case DataSource::Kind::CsvFile:
            return "csv file " + source.path;
        case DataSource::Kind::LibsvmFile:
            return "libsvm file " + source.path;
        case DataSource::Kind::Synthetic:
            return "synthetic n_per_class=" +
                   std::to_string(source.n_per_class) +
                   " d=" + std::to_string(source.d) +
                   " informative=" + std::to_string(source.informative) +
                   " shift=" + double_str(source.shift);
    }
    return "unknown source";
}

double zero_one_error(const Vector& predictions, const Vector& labels) {
    if (predictions.size() != labels.size()) {
        throw DimensionError("zero_one_error: " +
                             std::to_string(predictions.size()) +
                             " predictions for " +
                             std::to_string(labels.size()) + " labels");
    }
    if (labels.empty()) {
        throw ValueError("zero_one_error: no instances");
    }
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (predictions[i] != labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

double standard_error(const std::vector<double>& samples) {
    if (samples.empty()) {
        throw ValueError("standard_error: no samples");
    }
    const auto n = samples.size();
    if (n == 1) return 0.0;
    const double m = mean_of(samples);
    double ss = 0.0;
    for (double x : samples) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return sd / std::sqrt(static_cast<double>(n));
}

std::uint64_t partition_hash(const SplitIndices& idx) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix_byte = [&h](std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ULL;
    };
    auto mix_index = [&](std::size_t v) {
        for (int shift = 0; shift < 64; shift += 8) {
            mix_byte(static_cast<std::uint8_t>(v >> shift));
        }
    };
    for (std::size_t v : idx.train) mix_index(v);
    mix_byte(0xFF);
    for (std::size_t v : idx.test) mix_index(v);
    return h;
}

Ensemble train_method(Method method, const Dataset& train,
                      const BoostConfig& cfg, Rng& rng,
                      std::vector<RoundRecord>* trace) {
    switch (method) {
        case Method::Rrc:
            return wrap_single("rrc", ridge_fit(train, cfg.lambda), cfg,
                               train.feature_count());
        case Method::RrcBoost: {
            TrainResult r = train_rrcboost(train, cfg);
            if (trace) *trace = std::move(r.trace);
            return std::move(r.ensemble);
        }
        case Method::RpBoost: {
            TrainResult r = train_rpboost(train, cfg, rng);
            if (trace) *trace = std::move(r.trace);
            return std::move(r.ensemble);
        }
        case Method::RpRrc:
            return wrap_single("rprrc", train_rprrc(train, cfg, rng), cfg,
                               train.feature_count());
        case Method::StumpBoost: {
            TrainResult r = train_stumpboost(train, cfg);
            if (trace) *trace = std::move(r.trace);
            return std::move(r.ensemble);
        }
    }
    throw ValueError("train_method: bad method");
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (spec.methods.empty()) {
        throw ValueError("experiment: methods must be non-empty");
    }
    if (spec.repeats < 1) {
        throw ValueError("experiment: repeats must be >= 1");
    }
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ValueError("experiment: train_fraction must be in (0,1)");
    }
    validate_config(spec.config);

    const Dataset full =
        load_source(spec.source, Rng::derive(spec.master_seed, 0, 0));

    ExperimentReport rep;
    rep.spec = spec;
    rep.instance_count = full.instance_count();
    rep.feature_count = full.feature_count();
    rep.environment = environment_note();

    // Untimed 1-round warm-up per method: pays the first-touch allocation
    // cost (notably the d x d gram of the full-space fits) outside the
    // measured runs. Warm-up failures resurface in the timed runs.
    {
        BoostConfig warm_cfg = spec.config;
        warm_cfg.rounds = 1;
        try {
            const SplitSpec warm_split{spec.train_fraction,
                                       Rng::derive(spec.master_seed, 1, 0),
                                       spec.stratify};
            auto parts = split(full, warm_split);
            if (spec.standardize) standardize(parts.first, &parts.second);
            if (spec.intercept) parts.first = with_intercept(parts.first);
            for (Method m : spec.methods) {
                Rng rng(Rng::derive(spec.master_seed, 0,
                                    10 + static_cast<std::uint64_t>(m)));
                try {
                    train_method(m, parts.first, warm_cfg, rng);
                } catch (const Error&) {
                }
            }
        } catch (const Error&) {
        }
    }

    for (std::size_t run = 1; run <= spec.repeats; ++run) {
        const std::uint64_t split_seed = Rng::derive(spec.master_seed, run, 0);
        const SplitSpec split_spec{spec.train_fraction, split_seed,
                                   spec.stratify};

        Dataset train, test;
        std::uint64_t part_hash = 0;
        std::string split_failure;
        try {
            const SplitIndices idx = split_indices(
                full.instance_count(), full.labels, split_spec);
            part_hash = partition_hash(idx);
            train = take_rows(full, idx.train);
            test = take_rows(full, idx.test);
            // A single-class training fold is unusable for every method, so
            // treat it like a bad partition rather than a per-method failure.
            require_two_classes(train);
            if (spec.standardize) standardize(train, &test);
            if (spec.intercept) {
                train = with_intercept(train);
                test = with_intercept(test);
            }
        } catch (const Error& e) {
            split_failure = e.what();
        }

        for (Method m : spec.methods) {
            RunRecord rec;
            rec.method = m;
            rec.run = run;
            rec.split_seed = split_seed;
            rec.partition_hash = part_hash;
            if (!split_failure.empty()) {
                rec.failed = true;
                rec.error = "split failed: " + split_failure;
                rep.records.push_back(std::move(rec));
                continue;
            }
            try {
                Rng rng(Rng::derive(spec.master_seed, run,
                                    10 + static_cast<std::uint64_t>(m)));
                const auto start = std::chrono::steady_clock::now();
                const Ensemble model =
                    train_method(m, train, spec.config, rng);
                rec.learn_seconds = seconds_since(start);
                rec.test_error = zero_one_error(
                    predict_ensemble_rows(model, test.features), test.labels);
            } catch (const Error& e) {
                rec.failed = true;
                rec.error = e.what();
            }
            rep.records.push_back(std::move(rec));
        }
    }

    for (Method m : spec.methods) {
        std::vector<double> times, errors;
        for (const RunRecord& rec : rep.records) {
            if (rec.method != m || rec.failed) continue;
            times.push_back(rec.learn_seconds);
            errors.push_back(rec.test_error);
        }
        MethodStats st;
        st.method = m;
        st.completed_runs = times.size();
        if (!times.empty()) {
            st.mean_time = mean_of(times);
            st.se_time = standard_error(times);
            st.mean_error = mean_of(errors);
            st.se_error = standard_error(errors);
        }
        rep.stats.push_back(st);
    }
    return rep;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "markdown-table") return ReportFormat::Markdown;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json-lines") return ReportFormat::JsonLines;
    throw ValueError("unknown report format '" + name +
                     "' (expected markdown-table, csv or json-lines)");
}

namespace {

std::string render_markdown(const ExperimentReport& rep) {
    const ExperimentSpec& spec = rep.spec;
    std::string out = "# benchmark report\n\n";
    out += "- dataset: " + describe_source(spec.source) + " (N=" +
           std::to_string(rep.instance_count) + ", d=" +
           std::to_string(rep.feature_count) + ")\n";
    out += "- protocol: repeats=" + std::to_string(spec.repeats) +
           ", train fraction=" + double_str(spec.train_fraction) +
           ", stratify=" + (spec.stratify ? std::string("on") : "off") +
           ", master seed=" + std::to_string(spec.master_seed) + "\n";
    out += "- config: rounds=" + std::to_string(spec.config.rounds) +
           ", projections=" + std::to_string(spec.config.projections) +
           ", subspace_dim=" + std::to_string(spec.config.subspace_dim) +
           ", lambda=" + double_str(spec.config.lambda) + "\n";
    out += "- environment: " + rep.environment + "\n\n";

    out += "| method | learn time (s) | generalisation error |\n";
    out += "| --- | --- | --- |\n";
    for (const MethodStats& st : rep.stats) {
        out += "| " + method_name(st.method) + " | ";
        if (st.completed_runs == 0) {
            out += "— | — |\n";
        } else {
            out += two_decimals(st.mean_time) + "±" +
                   two_decimals(st.se_time) + " | " +
                   two_decimals(st.mean_error) + "±" +
                   two_decimals(st.se_error) + " |\n";
        }
    }

    std::string failures;
    for (const RunRecord& rec : rep.records) {
        if (!rec.failed) continue;
        failures += "- " + method_name(rec.method) + " run " +
                    std::to_string(rec.run) + ": " + rec.error + "\n";
    }
    if (!failures.empty()) {
        out += "\nFailed runs (excluded from the statistics above):\n";
        out += failures;
    }
    return out;
}

std::string render_csv(const ExperimentReport& rep) {
    std::string out = "method,run,seed,learn_time_s,test_error\n";
    for (const RunRecord& rec : rep.records) {
        if (rec.failed) continue;
        out += method_name(rec.method);
        out += ',';
        out += std::to_string(rec.run);
        out += ',';
        out += std::to_string(rec.split_seed);
        out += ',';
        append_double(out, rec.learn_seconds);
        out += ',';
        append_double(out, rec.test_error);
        out += '\n';
    }
    return out;
}

std::string hex_u64(std::uint64_t v) {
    char buf[19] = "0x";
    static const char digits[] = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) {
        buf[2 + i] = digits[(v >> (60 - 4 * i)) & 0xF];
    }
    return std::string(buf, 18);
}

std::string render_jsonl(const ExperimentReport& rep) {
    std::string out;
    for (const RunRecord& rec : rep.records) {
        nlohmann::ordered_json j;
        j["method"] = method_name(rec.method);
        j["run"] = rec.run;
        j["split_seed"] = rec.split_seed;
        j["partition_hash"] = hex_u64(rec.partition_hash);
        j["learn_time_s"] = rec.learn_seconds;
        j["test_error"] = rec.test_error;
        j["failed"] = rec.failed;
        if (rec.failed) j["error"] = rec.error;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_report(const ExperimentReport& rep, ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown:
            return render_markdown(rep);
        case ReportFormat::Csv:
            return render_csv(rep);
        case ReportFormat::JsonLines:
            return render_jsonl(rep);
    }
    throw ValueError("render_report: bad format");
}

}  // namespace rpboost
