#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpboost/boosting.hpp"
#include "rpboost/dataset.hpp"

namespace rpboost {

enum class Method { Rrc, RrcBoost, RpBoost, RpRrc, StumpBoost };

/// Token as used on the command line and in model/report files.
const std::string& method_name(Method m);
/// Inverse of method_name; throws ValueError for unknown tokens.
Method method_from_name(const std::string& name);

/// Where an experiment's data comes from: a CSV file, a LIBSVM-format file,
/// or the synthetic Gaussian generator.
struct DataSource {
    enum class Kind { CsvFile, LibsvmFile, Synthetic };
    Kind kind = Kind::Synthetic;

    // file sources
    std::string path;
    std::size_t label_column = 0;
    std::string positive_label = "1";

    // synthetic source
    std::size_t n_per_class = 31;
    std::size_t d = 2000;
    std::size_t informative = 10;
    double shift = 1.0;
};

/// Loads the source; `seed` drives the synthetic generator and is ignored
/// for files.
Dataset load_source(const DataSource& source, std::uint64_t seed);

/// One-line human description of a source ("file colon.csv" / "synthetic
/// d=2000 ...") used in report headers.
std::string describe_source(const DataSource& source);

struct ExperimentSpec {
    DataSource source;
    std::vector<Method> methods;
    std::size_t repeats = 20;
    double train_fraction = 0.8;
    bool stratify = false;
    bool standardize = false;  // per run, train-fold statistics
    bool intercept = false;    // per run, constant-1 feature appended
    BoostConfig config;
    std::uint64_t master_seed = 0;
};

/// Raw measurement of one (method, run) cell. Failed cells keep their
/// error message and are excluded from aggregate statistics.
struct RunRecord {
    Method method = Method::Rrc;
    std::size_t run = 0;  // 1-based
    std::uint64_t split_seed = 0;
    std::uint64_t partition_hash = 0;
    double learn_seconds = 0.0;
    double test_error = 0.0;
    bool failed = false;
    std::string error;
};

struct MethodStats {
    Method method = Method::Rrc;
    std::size_t completed_runs = 0;
    double mean_time = 0.0;
    double se_time = 0.0;
    double mean_error = 0.0;
    double se_error = 0.0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::size_t instance_count = 0;
    std::size_t feature_count = 0;
    std::string environment;  // host/compiler note for timing context
    std::vector<RunRecord> records;     // run-major, method order as in spec
    std::vector<MethodStats> stats;     // method order as in spec
};

/// Sample standard deviation (n-1 denominator) over sqrt(n); 0 for a single
/// sample; empty input is an error.
double standard_error(const std::vector<double>& samples);

/// Fraction of positions where the +/-1 vectors disagree.
double zero_one_error(const Vector& predictions, const Vector& labels);

/// FNV-1a over the train indices, a separator, then the test indices.
/// Recorded per run so reports can prove all methods saw the same partition.
std::uint64_t partition_hash(const SplitIndices& idx);

/// Trains one method on `train`. rrc and rprrc produce a single-member
/// ensemble with alpha = 1; boosted methods run the full loop and append
/// their per-round records to `trace` when it is non-null.
Ensemble train_method(Method method, const Dataset& train,
                      const BoostConfig& cfg, Rng& rng,
                      std::vector<RoundRecord>* trace = nullptr);

/// Runs the full protocol: one dataset; per run r (1-based) a fresh split
/// seeded by derive(master_seed, r, 0); every method trains on that same
/// partition with its own stream derive(master_seed, r, 10 + method id) and
/// is timed around the whole training call. Methods execute serially so
/// wall-clock numbers are meaningful; an untimed 1-round warm-up per method
/// absorbs first-touch allocation costs. Synthetic sources are generated
/// once per experiment from derive(master_seed, 0, 0).
ExperimentReport run_experiment(const ExperimentSpec& spec);

enum class ReportFormat { Markdown, Csv, JsonLines };
ReportFormat report_format_from_name(const std::string& name);

/// Deterministic text for a report. Markdown: method | learn time (s)
/// mean±SE | generalisation error mean±SE, 2 decimals, failed cells as "—"
/// with a footnote. CSV: method,run,seed,learn_time_s,test_error (failed
/// rows omitted). JSON lines: every raw record, one object per line.
std::string render_report(const ExperimentReport& rep, ReportFormat format);

}  // namespace rpboost
