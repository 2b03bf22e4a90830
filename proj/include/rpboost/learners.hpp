#pragma once

#include <cstddef>
#include <vector>

#include "rpboost/dataset.hpp"
#include "rpboost/linalg.hpp"

namespace rpboost {

/// Ridge solution in the original d-dimensional feature space. Predicts
/// sign(x^T beta); an exact zero resolves to -1.
struct LinearClassifier {
    Vector beta;
    double lambda = 0.0;  // regularisation strength used at fit time
};

/// One-feature threshold classifier: polarity if x[feature] > threshold,
/// otherwise -polarity (strict inequality).
struct Stump {
    std::size_t feature = 0;
    double threshold = 0.0;
    double polarity = 1.0;  // exactly +1 or -1
};

/// A subspace ridge solution b (length m) kept together with the d x m
/// projection that produced it, so it can be mapped back to d-space.
struct SubspaceFit {
    Vector b;
    DenseMatrix r;
};

/// Plain ridge: solves (X^T X + lambda I) beta = X^T y. lambda = 0 is
/// accepted (conditioning is then the caller's problem); lambda < 0 is not.
LinearClassifier ridge_fit(const Dataset& ds, double lambda);

/// Weighted ridge in the original space, W = diag(w):
/// (X^T W X + lambda I) beta = X^T W y. Requires lambda > 0, w_i >= 0 and
/// sum w > 0. lambda is NOT rescaled by sum w — boosting keeps its weights
/// normalized to 1, which keeps lambda's meaning stable across rounds.
LinearClassifier weighted_ridge_fit(const Dataset& ds, const Vector& w,
                                    double lambda);

/// Weighted ridge on projected data Z = X r:
/// (Z^T W Z + lambda I) b = Z^T W y. Weight/lambda contract as in
/// weighted_ridge_fit. The projection is taken by value; move it in.
SubspaceFit weighted_subspace_fit(const Dataset& ds, const Vector& w,
                                  double lambda, DenseMatrix r);

/// Maps each subspace solution back through its own projection and
/// averages: beta = (1/P) sum_p r_p b_p. `lambda` only annotates the
/// returned classifier (each fit already baked its lambda into b).
LinearClassifier recover(const std::vector<SubspaceFit>& fits,
                         double lambda = 0.0);

/// sign(x^T beta); exact zero -> -1.
double predict_linear(const LinearClassifier& c, const Vector& x);

/// Raw margins X beta, one per row of x.
Vector decision_values(const LinearClassifier& c, const DenseMatrix& x);

/// +/-1 labels, one per row of x.
Vector predict_rows(const LinearClassifier& c, const DenseMatrix& x);
Vector predict_rows(const Stump& s, const DenseMatrix& x);

/// Minimizes the weighted 0/1 error over every feature, every midpoint
/// between consecutive distinct sorted values plus the +/-infinity boundary
/// thresholds, and both polarities. Ties break toward the lower feature
/// index, then the lower threshold, then polarity +1.
Stump stump_fit(const Dataset& ds, const Vector& w);

/// polarity if x[s.feature] > s.threshold else -polarity.
double predict_stump(const Stump& s, const Vector& x);

}  // namespace rpboost
