// Shared helpers for the test binaries: random problem generators and the
// independent brute-force / explicit-inverse oracles the library results
// are checked against. Everything here is deliberately naive — these are
// the second opinion, not the implementation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "rpboost/dataset.hpp"
#include "rpboost/learners.hpp"
#include "rpboost/linalg.hpp"
#include "rpboost/rng.hpp"

namespace testsupport {

using rpboost::Dataset;
using rpboost::DenseMatrix;
using rpboost::Rng;
using rpboost::Stump;
using rpboost::Vector;

/// N(0,1) features, random +/-1 labels with at least one of each class.
inline Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d) {
    Dataset ds;
    ds.features = DenseMatrix(n, d);
    ds.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            ds.features(i, j) = rng.normal(0.0, 1.0);
        }
        ds.labels[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    // Force both classes to be present.
    ds.labels[0] = 1.0;
    ds.labels[n - 1] = -1.0;
    return ds;
}

/// Random weights in (0.05, 1.05), normalized to sum to 1.
inline Vector random_weights(Rng& rng, std::size_t n) {
    Vector w(n);
    double sum = 0.0;
    for (double& v : w) {
        v = 0.05 + rng.uniform();
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

/// Gauss-Jordan inverse with partial pivoting — an explicit-inverse route
/// entirely independent of the library's factor-and-solve path.
inline DenseMatrix gauss_jordan_inverse(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::runtime_error("inverse: not square");
    DenseMatrix work = a;
    DenseMatrix inv = DenseMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) {
                pivot = r;
            }
        }
        if (work(pivot, col) == 0.0) {
            throw std::runtime_error("inverse: singular matrix");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(work(pivot, c), work(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const double diag = work(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            work(col, c) /= diag;
            inv(col, c) /= diag;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = work(r, col);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                work(r, c) -= factor * work(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

/// Weighted 0/1 error of a fixed (feature, threshold, polarity) stump by
/// direct summation.
inline double stump_error(const Dataset& ds, const Vector& w,
                          std::size_t feature, double threshold,
                          double polarity) {
    double err = 0.0;
    for (std::size_t i = 0; i < ds.instance_count(); ++i) {
        const double pred =
            ds.features(i, feature) > threshold ? polarity : -polarity;
        if (pred != ds.labels[i]) err += w[i];
    }
    return err;
}

inline double stump_error(const Stump& s, const Dataset& ds, const Vector& w) {
    return stump_error(ds, w, s.feature, s.threshold, s.polarity);
}

/// Exhaustive minimum over every feature, every midpoint between
/// consecutive distinct sorted values plus +/-infinity, both polarities.
inline double brute_force_stump_error(const Dataset& ds, const Vector& w) {
    const double inf = std::numeric_limits<double>::infinity();
    double best = inf;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        std::set<double> values;
        for (std::size_t i = 0; i < ds.instance_count(); ++i) {
            values.insert(ds.features(i, j));
        }
        std::vector<double> thresholds = {-inf, inf};
        double prev = 0.0;
        bool first = true;
        for (double v : values) {
            if (!first) thresholds.push_back(prev + (v - prev) / 2.0);
            prev = v;
            first = false;
        }
        for (double t : thresholds) {
            for (double polarity : {1.0, -1.0}) {
                best = std::min(best, stump_error(ds, w, j, t, polarity));
            }
        }
    }
    return best;
}

/// Standard normal CDF.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

/// Two-sided Kolmogorov-Smirnov statistic of `samples` against N(0, var).
inline double ks_statistic_normal(std::vector<double> samples,
                                  double variance) {
    std::sort(samples.begin(), samples.end());
    const double sd = std::sqrt(variance);
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf(samples[i] / sd);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::abs(f - lo), std::abs(hi - f)));
    }
    return d;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace testsupport
