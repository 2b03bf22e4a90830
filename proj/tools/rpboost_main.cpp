// Command-line driver: train / predict / bench / synth subcommands over the
// library. Exit codes: 0 success, 1 usage or validation problem, 2 data
// problem, 3 numerical failure.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpboost/bench.hpp"
#include "rpboost/boosting.hpp"
#include "rpboost/dataset.hpp"
#include "rpboost/errors.hpp"
#include "rpboost/model_io.hpp"
#include "rpboost/text.hpp"

namespace {

using namespace rpboost;

struct DataFlags {
    std::string path;
    bool libsvm = false;
    std::size_t label_column = 0;
    std::string positive_label = "1";
};

CLI::Option* add_data_flags(CLI::App* cmd, DataFlags& f) {
    auto* data = cmd->add_option("--data", f.path, "Dataset file (CSV unless --libsvm)");
    cmd->add_flag("--libsvm", f.libsvm, "Treat --data as LIBSVM-format text");
    cmd->add_option("--label-column", f.label_column, "CSV column holding the label")
        ->capture_default_str();
    cmd->add_option("--positive-label", f.positive_label, "CSV label token mapped to +1")
        ->capture_default_str();
    return data;
}

Dataset load_data(const DataFlags& f) {
    return f.libsvm ? load_libsvm(f.path)
                    : load_csv(f.path, f.label_column, f.positive_label);
}

void add_boost_flags(CLI::App* cmd, BoostConfig& cfg) {
    cmd->add_option("--rounds", cfg.rounds,
                    "Boosting rounds K (doubles as the averaging count L of rprrc)")
        ->capture_default_str();
    cmd->add_option("--projections", cfg.projections,
                    "Projections P averaged per rpboost round")
        ->capture_default_str();
    cmd->add_option("--subspace-dim", cfg.subspace_dim, "Projected dimension m")
        ->capture_default_str();
    cmd->add_option("--lambda", cfg.lambda, "Ridge strength of every base fit")
        ->capture_default_str();
    cmd->add_option("--clamp", cfg.epsilon_clamp,
                    "Error clamp keeping alpha finite at epsilon 0 or 1")
        ->capture_default_str();
}

CLI::Option* add_seed_flag(CLI::App* cmd, std::uint64_t& seed) {
    return cmd->add_option("--seed", seed, "Master seed (env RPBOOST_SEED when absent)")
        ->capture_default_str()
        ->envname("RPBOOST_SEED");
}

bool parse_size_token(const std::string& tok, std::size_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

bool parse_double_token(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

// "d=2000,n=31,informative=10,shift=1.0" with every key optional.
DataSource parse_synth(const std::string& text) {
    DataSource src;
    src.kind = DataSource::Kind::Synthetic;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        start = end + 1;
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw ValueError("synth spec: expected key=value, got '" + item +
                             "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        bool ok = false;
        if (key == "d") {
            ok = parse_size_token(value, src.d);
        } else if (key == "n") {
            ok = parse_size_token(value, src.n_per_class);
        } else if (key == "informative") {
            ok = parse_size_token(value, src.informative);
        } else if (key == "shift") {
            ok = parse_double_token(value, src.shift);
        } else {
            throw ValueError("synth spec: unknown key '" + key +
                             "' (expected d, n, informative, shift)");
        }
        if (!ok) {
            throw ValueError("synth spec: bad value for '" + key + "': '" +
                             value + "'");
        }
    }
    return src;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(DataError::Kind::MissingFile,
                        "cannot write file: " + path);
    }
    out << text;
}

std::string trace_csv(const std::vector<RoundRecord>& trace) {
    std::string text =
        "round,epsilon,alpha,loss,fit_seconds,weight_sum,"
        "misclassified_mass,clamped\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const RoundRecord& r = trace[i];
        text += std::to_string(i + 1);
        text += ',';
        append_double(text, r.epsilon);
        text += ',';
        append_double(text, r.alpha);
        text += ',';
        append_double(text, r.loss);
        text += ',';
        append_double(text, r.fit_seconds);
        text += ',';
        append_double(text, r.weight_sum);
        text += ',';
        append_double(text, r.misclassified_mass);
        text += ',';
        text += r.clamped ? '1' : '0';
        text += '\n';
    }
    return text;
}

DenseMatrix with_ones_column(const DenseMatrix& x) {
    DenseMatrix out(x.rows(), x.cols() + 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
        out(i, x.cols()) = 1.0;
    }
    return out;
}

DenseMatrix zero_padded(const DenseMatrix& x, std::size_t cols) {
    DenseMatrix out(x.rows(), cols);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
    }
    return out;
}

// ---------------------------------------------------------------- train --

struct TrainArgs {
    DataFlags data;
    std::string method = "rpboost";
    BoostConfig cfg;
    std::uint64_t seed = 0;
    bool standardize = false;
    bool intercept = false;
    std::string out = "rpboost.model";
    std::string trace;
};

int run_train(const TrainArgs& args) {
    const Method method = method_from_name(args.method);
    Dataset ds = load_data(args.data);
    if (args.standardize) standardize(ds, nullptr);
    if (args.intercept) ds = with_intercept(ds);

    BoostConfig cfg = args.cfg;
    cfg.seed = args.seed;
    Rng rng(cfg.seed);
    std::vector<RoundRecord> trace;

    const auto start = std::chrono::steady_clock::now();
    const Ensemble model = train_method(method, ds, cfg, rng, &trace);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    save_model(model, args.out);
    std::cout << "trained " << args.method << " on " << ds.instance_count()
              << "x" << ds.feature_count() << " in " << double_str(seconds)
              << " s: " << model.members.size() << " member(s) -> " << args.out
              << "\n";
    if (!trace.empty()) {
        const std::string path =
            args.trace.empty() ? args.out + ".trace.csv" : args.trace;
        write_text(path, trace_csv(trace));
        std::cout << "trace -> " << path << "\n";
    }
    return 0;
}

// -------------------------------------------------------------- predict --

struct PredictArgs {
    std::string model;
    DataFlags data;
    bool labeled = false;
    bool intercept = false;
    std::string out;
};

int run_predict(const PredictArgs& args) {
    const Ensemble model = load_model(args.model);

    DenseMatrix x;
    Vector y;
    bool have_labels = false;
    if (args.data.libsvm) {
        Dataset ds = load_libsvm(args.data.path);
        x = std::move(ds.features);
        y = std::move(ds.labels);
        have_labels = true;
        // LIBSVM width is the largest index seen; trailing all-zero
        // features are legitimately absent, so pad up to the model.
        if (x.cols() < model.dim) x = zero_padded(x, model.dim);
    } else if (args.labeled) {
        Dataset ds = load_csv(args.data.path, args.data.label_column,
                              args.data.positive_label);
        x = std::move(ds.features);
        y = std::move(ds.labels);
        have_labels = true;
    } else {
        x = load_features_csv(args.data.path);
    }
    if (args.intercept) x = with_ones_column(x);

    if (x.cols() != model.dim) {
        throw DimensionError("model expects d=" + std::to_string(model.dim) +
                             ", input has d=" + std::to_string(x.cols()));
    }

    const Vector pred = predict_ensemble_rows(model, x);
    std::string lines;
    for (double v : pred) lines += v > 0 ? "1\n" : "-1\n";
    if (args.out.empty()) {
        std::cout << lines;
    } else {
        write_text(args.out, lines);
        std::cout << "labels -> " << args.out << "\n";
    }
    if (have_labels) {
        std::printf("error %.2f\n", zero_one_error(pred, y));
    }
    return 0;
}

// ---------------------------------------------------------------- bench --

struct BenchArgs {
    DataFlags data;
    std::string synth;
    std::vector<std::string> methods = {"rrc", "rrc-boost", "rpboost", "rprrc",
                                        "stump-boost"};
    std::size_t repeats = 20;
    double fraction = 0.8;
    bool stratify = false;
    bool standardize = false;
    bool intercept = false;
    BoostConfig cfg;
    std::uint64_t seed = 0;
    std::string out_md;
    std::string out_csv;
    std::string out_jsonl;
    std::string spec_path;
};

bool parse_u64_token(const std::string& tok, std::uint64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !tok.empty();
}

bool parse_bool_token(const std::string& tok, bool& out) {
    if (tok == "1" || tok == "true" || tok == "on" || tok == "yes") {
        out = true;
        return true;
    }
    if (tok == "0" || tok == "false" || tok == "off" || tok == "no") {
        out = false;
        return true;
    }
    return false;
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) items.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return items;
}

// Flat key=value file mirroring the bench flags. Values already given on the
// command line (or via RPBOOST_SEED) win over the file's.
void apply_spec_file(const std::string& path, const CLI::App& cmd,
                     BenchArgs& args) {
    std::ifstream in(path);
    if (!in) throw ValueError("cannot open spec file: " + path);

    const auto trim = [](std::string s) {
        const auto notspace = [](unsigned char c) { return !std::isspace(c); };
        s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
        s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
        return s;
    };
    const auto given = [&cmd](const std::string& flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    const bool source_pinned = given("--data") || given("--synth");

    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::string where =
            path + ": line " + std::to_string(ln) + ": ";

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValueError(where + "expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }

        // The data/synth pair is a unit: once the command line picks a
        // source, the file cannot switch it.
        if (source_pinned && (key == "data" || key == "synth")) continue;
        if (key != "data" && key != "synth" && given("--" + key)) continue;

        bool ok = true;
        if (key == "data") {
            args.data.path = value;
        } else if (key == "libsvm") {
            ok = parse_bool_token(value, args.data.libsvm);
        } else if (key == "label-column") {
            ok = parse_size_token(value, args.data.label_column);
        } else if (key == "positive-label") {
            args.data.positive_label = value;
        } else if (key == "synth") {
            args.synth = value;
        } else if (key == "methods") {
            args.methods = split_csv_list(value);
        } else if (key == "repeats") {
            ok = parse_size_token(value, args.repeats);
        } else if (key == "fraction") {
            ok = parse_double_token(value, args.fraction);
        } else if (key == "stratify") {
            ok = parse_bool_token(value, args.stratify);
        } else if (key == "standardize") {
            ok = parse_bool_token(value, args.standardize);
        } else if (key == "intercept") {
            ok = parse_bool_token(value, args.intercept);
        } else if (key == "rounds") {
            ok = parse_size_token(value, args.cfg.rounds);
        } else if (key == "projections") {
            ok = parse_size_token(value, args.cfg.projections);
        } else if (key == "subspace-dim") {
            ok = parse_size_token(value, args.cfg.subspace_dim);
        } else if (key == "lambda") {
            ok = parse_double_token(value, args.cfg.lambda);
        } else if (key == "clamp") {
            ok = parse_double_token(value, args.cfg.epsilon_clamp);
        } else if (key == "seed") {
            ok = parse_u64_token(value, args.seed);
        } else if (key == "out-md") {
            args.out_md = value;
        } else if (key == "out-csv") {
            args.out_csv = value;
        } else if (key == "out-jsonl") {
            args.out_jsonl = value;
        } else {
            throw ValueError(where + "unknown key '" + key + "'");
        }
        if (!ok) {
            throw ValueError(where + "bad value for '" + key + "': '" +
                             value + "'");
        }
    }
    if (!args.data.path.empty() && !args.synth.empty()) {
        throw ValueError(path +
                         ": data and synth are mutually exclusive sources");
    }
}

int run_bench(const BenchArgs& args) {
    ExperimentSpec spec;
    if (!args.data.path.empty()) {
        spec.source.kind = args.data.libsvm ? DataSource::Kind::LibsvmFile
                                            : DataSource::Kind::CsvFile;
        spec.source.path = args.data.path;
        spec.source.label_column = args.data.label_column;
        spec.source.positive_label = args.data.positive_label;
    } else {
        spec.source = parse_synth(args.synth);
    }
    for (const std::string& name : args.methods) {
        spec.methods.push_back(method_from_name(name));
    }
    spec.repeats = args.repeats;
    spec.train_fraction = args.fraction;
    spec.stratify = args.stratify;
    spec.standardize = args.standardize;
    spec.intercept = args.intercept;
    spec.config = args.cfg;
    spec.config.seed = args.seed;
    spec.master_seed = args.seed;

    const ExperimentReport report = run_experiment(spec);

    bool wrote = false;
    if (!args.out_md.empty()) {
        write_text(args.out_md, render_report(report, ReportFormat::Markdown));
        std::cout << "markdown -> " << args.out_md << "\n";
        wrote = true;
    }
    if (!args.out_csv.empty()) {
        write_text(args.out_csv, render_report(report, ReportFormat::Csv));
        std::cout << "csv -> " << args.out_csv << "\n";
        wrote = true;
    }
    if (!args.out_jsonl.empty()) {
        write_text(args.out_jsonl,
                   render_report(report, ReportFormat::JsonLines));
        std::cout << "json-lines -> " << args.out_jsonl << "\n";
        wrote = true;
    }
    if (!wrote) {
        std::cout << render_report(report, ReportFormat::Markdown);
    }
    return 0;
}

// ---------------------------------------------------------------- synth --

struct SynthArgs {
    std::string synth;
    std::uint64_t seed = 0;
    std::string out = "synth.csv";
};

int run_synth(const SynthArgs& args) {
    const DataSource src = parse_synth(args.synth);
    const Dataset ds = load_source(src, args.seed);
    save_csv(ds, args.out);
    std::cout << "wrote " << args.out << " (" << ds.instance_count()
              << " rows, " << ds.feature_count() << " features)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boosted ridge regression classifiers in random subspaces"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train_cmd = app.add_subcommand(
        "train", "Train one method on a full dataset file (no split)");
    add_data_flags(train_cmd, train_args.data)->required();
    train_cmd
        ->add_option("--method", train_args.method,
                     "rrc, rrc-boost, rpboost, rprrc or stump-boost")
        ->capture_default_str();
    add_boost_flags(train_cmd, train_args.cfg);
    add_seed_flag(train_cmd, train_args.seed);
    train_cmd->add_flag(
        "--standardize", train_args.standardize,
        "Standardize features first (statistics are not stored in the model)");
    train_cmd->add_flag("--intercept", train_args.intercept,
                        "Append a constant-1 feature before fitting");
    train_cmd->add_option("--out", train_args.out, "Model file to write")
        ->capture_default_str();
    train_cmd->add_option(
        "--trace", train_args.trace,
        "Per-round trace CSV (default <out>.trace.csv; boosted methods only)");

    PredictArgs predict_args;
    auto* predict_cmd =
        app.add_subcommand("predict", "Predict +/-1 labels with a saved model");
    predict_cmd->add_option("--model", predict_args.model, "Model file")
        ->required();
    add_data_flags(predict_cmd, predict_args.data)->required();
    predict_cmd->add_flag(
        "--labeled", predict_args.labeled,
        "CSV input carries labels; also print the 0/1 error "
        "(LIBSVM input is always labeled)");
    predict_cmd->add_flag("--intercept", predict_args.intercept,
                          "Append a constant-1 feature (models trained with "
                          "--intercept need this)");
    predict_cmd->add_option("--out", predict_args.out,
                            "Write labels here instead of stdout");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand(
        "bench",
        "Repeated-split benchmark: learning time and generalisation error "
        "per method");
    auto* bench_data = add_data_flags(bench_cmd, bench_args.data);
    auto* bench_synth = bench_cmd->add_option(
        "--synth", bench_args.synth,
        "Synthetic source, e.g. d=2000,n=31,informative=10,shift=1.0 "
        "(default when --data is absent)");
    bench_data->excludes(bench_synth);
    bench_cmd
        ->add_option("--methods", bench_args.methods,
                     "Comma-separated subset of rrc, rrc-boost, rpboost, "
                     "rprrc, stump-boost")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--repeats", bench_args.repeats, "Independent runs")
        ->capture_default_str();
    bench_cmd
        ->add_option("--fraction", bench_args.fraction,
                     "Train fraction of each split")
        ->capture_default_str();
    bench_cmd->add_flag("--stratify", bench_args.stratify,
                        "Split each class separately");
    bench_cmd->add_flag("--standardize", bench_args.standardize,
                        "Standardize per run from train-fold statistics");
    bench_cmd->add_flag("--intercept", bench_args.intercept,
                        "Append a constant-1 feature per run");
    add_boost_flags(bench_cmd, bench_args.cfg);
    add_seed_flag(bench_cmd, bench_args.seed);
    bench_cmd->add_option("--out-md", bench_args.out_md,
                          "Write the markdown table here");
    bench_cmd->add_option("--out-csv", bench_args.out_csv,
                          "Write per-run CSV records here");
    bench_cmd->add_option("--out-jsonl", bench_args.out_jsonl,
                          "Write raw JSON-lines records here");
    bench_cmd->add_option("--spec", bench_args.spec_path,
                          "Flat key=value spec file; command-line flags win");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand(
        "synth", "Write a synthetic two-class Gaussian dataset as CSV");
    synth_cmd->add_option(
        "--synth", synth_args.synth,
        "Generator parameters, e.g. d=7129,n=36,informative=10,shift=1.0");
    add_seed_flag(synth_cmd, synth_args.seed);
    synth_cmd->add_option("--out", synth_args.out, "CSV file to write")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (train_cmd->parsed()) return run_train(train_args);
        if (predict_cmd->parsed()) return run_predict(predict_args);
        if (bench_cmd->parsed()) {
            if (!bench_args.spec_path.empty()) {
                apply_spec_file(bench_args.spec_path, *bench_cmd, bench_args);
            }
            return run_bench(bench_args);
        }
        if (synth_cmd->parsed()) return run_synth(synth_args);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
