#include "rpboost/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rpboost/errors.hpp"

namespace rpboost {

namespace {

void check_weights(const Vector& w, std::size_t n) {
    if (w.size() != n) {
        throw DimensionError("weights: expected " + std::to_string(n) +
                             " entries, got " + std::to_string(w.size()));
    }
    double sum = 0.0;
    for (double wi : w) {
        if (!(wi >= 0.0)) {
            throw ValueError("weights must be >= 0, got " +
                             std::to_string(wi));
        }
        sum += wi;
    }
    if (!(sum > 0.0)) {
        throw ValueError("weights sum to zero");
    }
}

// w_i * y_i, the right-hand-side weighting shared by all weighted fits.
Vector weighted_labels(const Vector& w, const Vector& y) {
    Vector wy(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) wy[i] = w[i] * y[i];
    return wy;
}

Vector solve_ridge_system(DenseMatrix gram, double lambda, const Vector& rhs) {
    try {
        return solve_spd(add_ridge(std::move(gram), lambda), rhs);
    } catch (const NotPositiveDefinite& e) {
        throw NotPositiveDefinite(std::string(e.what()) +
                                  "; try a larger lambda");
    }
}

}  // namespace

LinearClassifier ridge_fit(const Dataset& ds, double lambda) {
    if (!(lambda >= 0.0)) {
        throw ValueError("ridge_fit: lambda must be >= 0, got " +
                         std::to_string(lambda));
    }
    const Vector ones(ds.instance_count(), 1.0);
    Vector beta = solve_ridge_system(gram_weighted(ds.features, ones), lambda,
                                     tmatvec(ds.features, ds.labels));
    return LinearClassifier{std::move(beta), lambda};
}

LinearClassifier weighted_ridge_fit(const Dataset& ds, const Vector& w,
                                    double lambda) {
    if (!(lambda > 0.0)) {
        throw ValueError("weighted_ridge_fit: lambda must be > 0, got " +
                         std::to_string(lambda));
    }
    check_weights(w, ds.instance_count());
    Vector beta =
        solve_ridge_system(gram_weighted(ds.features, w), lambda,
                           tmatvec(ds.features, weighted_labels(w, ds.labels)));
    return LinearClassifier{std::move(beta), lambda};
}

SubspaceFit weighted_subspace_fit(const Dataset& ds, const Vector& w,
                                  double lambda, DenseMatrix r) {
    if (!(lambda > 0.0)) {
        throw ValueError("weighted_subspace_fit: lambda must be > 0, got " +
                         std::to_string(lambda));
    }
    if (r.rows() != ds.feature_count() || r.cols() == 0) {
        throw DimensionError(
            "weighted_subspace_fit: projection is " + std::to_string(r.rows()) +
            "x" + std::to_string(r.cols()) + ", data has d=" +
            std::to_string(ds.feature_count()));
    }
    check_weights(w, ds.instance_count());
    const DenseMatrix z = matmul(ds.features, r);
    Vector b = solve_ridge_system(gram_weighted(z, w), lambda,
                                  tmatvec(z, weighted_labels(w, ds.labels)));
    return SubspaceFit{std::move(b), std::move(r)};
}

LinearClassifier recover(const std::vector<SubspaceFit>& fits, double lambda) {
    if (fits.empty()) {
        throw ValueError("recover: no subspace fits to combine");
    }
    const std::size_t d = fits.front().r.rows();
    Vector beta(d, 0.0);
    for (const SubspaceFit& fit : fits) {
        if (fit.r.rows() != d || fit.r.cols() != fit.b.size()) {
            throw DimensionError(
                "recover: fit projection " + std::to_string(fit.r.rows()) +
                "x" + std::to_string(fit.r.cols()) + " does not match d=" +
                std::to_string(d) + ", m=" + std::to_string(fit.b.size()));
        }
        const Vector mapped = matvec(fit.r, fit.b);
        for (std::size_t i = 0; i < d; ++i) beta[i] += mapped[i];
    }
    const double scale = 1.0 / static_cast<double>(fits.size());
    for (double& v : beta) v *= scale;
    return LinearClassifier{std::move(beta), lambda};
}

double predict_linear(const LinearClassifier& c, const Vector& x) {
    if (x.size() != c.beta.size()) {
        throw DimensionError("predict_linear: expected " +
                             std::to_string(c.beta.size()) +
                             " features, got " + std::to_string(x.size()));
    }
    return dot(x, c.beta) > 0.0 ? 1.0 : -1.0;
}

Vector decision_values(const LinearClassifier& c, const DenseMatrix& x) {
    return matvec(x, c.beta);
}

Vector predict_rows(const LinearClassifier& c, const DenseMatrix& x) {
    Vector labels = matvec(x, c.beta);
    for (double& v : labels) v = v > 0.0 ? 1.0 : -1.0;
    return labels;
}

Vector predict_rows(const Stump& s, const DenseMatrix& x) {
    if (s.feature >= x.cols()) {
        throw DimensionError("predict_rows: stump feature " +
                             std::to_string(s.feature) + " out of range for " +
                             std::to_string(x.cols()) + " columns");
    }
    Vector labels(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        labels[i] = x(i, s.feature) > s.threshold ? s.polarity : -s.polarity;
    }
    return labels;
}

Stump stump_fit(const Dataset& ds, const Vector& w) {
    check_weights(w, ds.instance_count());
    const std::size_t n = ds.instance_count();
    const std::size_t d = ds.feature_count();
    const double inf = std::numeric_limits<double>::infinity();
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double negative_mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (ds.labels[i] < 0) negative_mass += w[i];
    }

    Stump best;
    double best_error = inf;
    // Scan order fixes the tie-break: feature ascending, threshold
    // ascending, polarity +1 before -1, strict improvement required.
    auto consider = [&](std::size_t feature, double threshold,
                        double error_plus) {
        if (error_plus < best_error) {
            best = Stump{feature, threshold, 1.0};
            best_error = error_plus;
        }
        const double error_minus = total - error_plus;
        if (error_minus < best_error) {
            best = Stump{feature, threshold, -1.0};
            best_error = error_minus;
        }
    };

    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) {
                      return ds.features(a, j) < ds.features(b, j);
                  });

        // threshold -inf: polarity +1 predicts +1 everywhere, so its error
        // is exactly the weight mass of the -1 class.
        double error_plus = negative_mass;
        consider(j, -inf, error_plus);

        // Sweep right: once a group of equal values drops to the <= side it
        // is predicted -1, so +1 instances in it become errors and -1
        // instances stop being errors.
        std::size_t i = 0;
        while (i < n) {
            const double value = ds.features(order[i], j);
            while (i < n && ds.features(order[i], j) == value) {
                error_plus += ds.labels[order[i]] > 0 ? w[order[i]]
                                                      : -w[order[i]];
                ++i;
            }
            double threshold = inf;
            if (i < n) {
                const double next = ds.features(order[i], j);
                threshold = value + (next - value) / 2.0;
                // Keep strictly below `next` so the split lands between the
                // two groups even if the midpoint rounds up.
                if (!(threshold < next)) threshold = value;
            }
            consider(j, threshold, error_plus);
        }
    }
    return best;
}

double predict_stump(const Stump& s, const Vector& x) {
    if (s.feature >= x.size()) {
        throw DimensionError("predict_stump: feature " +
                             std::to_string(s.feature) +
                             " out of range for vector of " +
                             std::to_string(x.size()));
    }
    return x[s.feature] > s.threshold ? s.polarity : -s.polarity;
}

}  // namespace rpboost
