#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rpboost/linalg.hpp"
#include "rpboost/rng.hpp"

namespace rpboost {

/// Feature matrix (N x d) plus a +/-1 label per row. Immutable after load by
/// convention; safe for shared concurrent reads.
struct Dataset {
    DenseMatrix features;
    Vector labels;                    // entries exactly -1 or +1
    std::vector<std::string> names;   // optional instance names, may be empty

    std::size_t instance_count() const { return features.rows(); }
    std::size_t feature_count() const { return features.cols(); }
};

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
    bool stratify = false;  // off by default: a pure random permutation
};

struct ClassCounts {
    std::size_t positive = 0;
    std::size_t negative = 0;
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Dense CSV loader. An optional header row is detected by any non-numeric
/// field outside the label column. Label tokens equal to positive_label map
/// to +1, everything else to -1.
Dataset load_csv(const std::string& path, std::size_t label_column,
                 const std::string& positive_label);

/// CSV without a label column: every field is a feature. Same header
/// detection. Used by prediction on unlabeled inputs.
DenseMatrix load_features_csv(const std::string& path);

/// Sparse "<label> <index>:<value> ..." text, 1-based strictly increasing
/// indices per line, '#' starts a comment. Unlisted entries are 0; labels
/// > 0 map to +1, <= 0 to -1.
Dataset load_libsvm(const std::string& path);

/// Disjoint, exhaustive partition; train size = round(train_fraction * N),
/// ordering from the seeded permutation. Stratified mode splits per class
/// (each class with >= 2 instances keeps at least one on each side), so
/// sizes may deviate from the round() count by one.
SplitIndices split_indices(std::size_t n, const Vector& labels,
                           const SplitSpec& spec);
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

Dataset take_rows(const Dataset& ds, const std::vector<std::size_t>& idx);

/// Two Gaussian classes of n_per_class points each: class +/-1 centered at
/// +/-shift on the first `informative` coordinates, N(0,1) on the rest.
Dataset synth_gaussian(Rng& rng, std::size_t n_per_class, std::size_t d,
                       std::size_t informative, double shift);

ClassCounts class_counts(const Dataset& ds);

/// Fit-time invariant: learners refuse single-class training sets.
void require_two_classes(const Dataset& ds);

/// Per-feature mean/variance from `train` only, applied to both folds.
/// Constant features are centered but not scaled. Opt-in; nothing in the
/// pipeline standardizes silently.
void standardize(Dataset& train, Dataset* test);

/// Copy with a constant-1 feature appended (the opt-in intercept).
Dataset with_intercept(const Dataset& ds);

/// Writes "label,f1,...,fd" rows (labels as 1/-1, features round-trip
/// exact). Deterministic bytes for a given dataset.
void save_csv(const Dataset& ds, const std::string& path);

}  // namespace rpboost
