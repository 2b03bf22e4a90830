#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "rpboost/dataset.hpp"
#include "rpboost/learners.hpp"
#include "rpboost/linalg.hpp"
#include "rpboost/rng.hpp"

namespace rpboost {

/// A weak learner as stored in an ensemble.
using Learner = std::variant<LinearClassifier, Stump>;

struct Member {
    double alpha = 0.0;
    Learner learner;
};

struct BoostConfig {
    std::size_t rounds = 300;      // K, boosting rounds (L for averaging)
    std::size_t projections = 3;   // P, projections averaged per round
    std::size_t subspace_dim = 3;  // m, target dimension of each projection
    double lambda = 0.3;           // ridge strength of every base fit
    double epsilon_clamp = 1e-10;  // epsilon is clamped to [c, 1-c] for alpha
    std::uint64_t seed = 0;        // master seed recorded with the model

    // A round with epsilon exactly 0 ends training after its member is
    // added (continuing would collapse the weights onto nothing). A round
    // with epsilon >= 0.5 keeps going by default, so round counts stay
    // comparable across methods; flip stop_when_no_edge to bail out instead.
    bool stop_on_zero_error = true;
    bool stop_when_no_edge = false;
};

/// Throws ValueError when a field is outside its documented range.
void validate_config(const BoostConfig& cfg);

/// Per-round diagnostics. epsilon is the raw weighted error (before
/// clamping); weight_sum and misclassified_mass are measured AFTER the
/// round's weight update and exist so invariant checks can read them off
/// the trace instead of re-running the algorithm.
struct RoundRecord {
    double epsilon = 0.0;
    double alpha = 0.0;
    double loss = 0.0;           // ensemble exponential loss after the round
    double fit_seconds = 0.0;    // wall clock of the fit step only
    double weight_sum = 0.0;
    double misclassified_mass = 0.0;
    bool clamped = false;        // epsilon fell outside [clamp, 1-clamp]
};

struct Ensemble {
    std::vector<Member> members;
    BoostConfig config;
    std::string method;   // one of the method_tokens() entries
    std::size_t dim = 0;  // feature count the members expect
};

struct TrainResult {
    Ensemble ensemble;
    std::vector<RoundRecord> trace;
};

/// Test hook: replaces the N(0,1/d) projection draw. Receives the child
/// generator for (round, projection) and the requested shape.
using ProjectionFn =
    std::function<DenseMatrix(Rng& rng, std::size_t d, std::size_t m)>;

/// +/-1 labels of any learner on every row of x.
Vector predict_rows(const Learner& h, const DenseMatrix& x);

/// Weight mass of the instances h misclassifies. Weights must be
/// normalized: |sum w - 1| > 1e-9 is an error.
double weighted_error(const Learner& h, const Dataset& ds, const Vector& w);

/// alpha = 0.5 ln((1-e)/e) with e first clamped to [clamp, 1-clamp].
/// Strictly decreasing in epsilon; alpha(0.5) = 0.
double alpha_from_error(double epsilon, double clamp);

/// One AdaBoost reweighting step: w_i <- w_i exp(-y_i alpha h(x_i)),
/// renormalized to sum exactly to 1.
Vector update_weights(const Vector& w, const Learner& h, double alpha,
                      const Dataset& ds);

/// Boosted subspace ridge: per round, P fresh d x m projections are drawn
/// from rng.child(round, p), fitted by weighted_subspace_fit and averaged
/// back into d-space; then the usual AdaBoost error/alpha/reweight step.
/// The stored member is the recovered d-dimensional classifier.
TrainResult train_rpboost(const Dataset& ds, const BoostConfig& cfg, Rng& rng,
                          const ProjectionFn& projection = {});

/// Boosted full-space ridge: one weighted_ridge_fit per round. projections
/// and subspace_dim are ignored.
TrainResult train_rrcboost(const Dataset& ds, const BoostConfig& cfg);

/// Averaged subspace ridge, no boosting: cfg.rounds plays L, every fit uses
/// uniform weights 1/N, and the recovered solutions are averaged into one
/// classifier.
LinearClassifier train_rprrc(const Dataset& ds, const BoostConfig& cfg,
                             Rng& rng, const ProjectionFn& projection = {});

/// Boosted decision stumps: one stump_fit per round.
TrainResult train_stumpboost(const Dataset& ds, const BoostConfig& cfg);

/// sign(sum_k alpha_k h_k(x)); zero vote -> -1.
double predict_ensemble(const Ensemble& e, const Vector& x);

/// Ensemble labels for every row of x.
Vector predict_ensemble_rows(const Ensemble& e, const DenseMatrix& x);

/// Raw votes sum_k alpha_k h_k(x) per row (the quantity whose sign is the
/// prediction); exposed for loss evaluation and tests.
Vector ensemble_margins(const Ensemble& e, const DenseMatrix& x);

/// sum_i w0_i exp(-y_i sum_k alpha_k h_k(x_i)) — the AdaBoost exponential
/// loss under the initial weights w0 (normally uniform 1/N). Diagnostic.
double exponential_loss(const Ensemble& e, const Dataset& ds,
                        const Vector& w0);

}  // namespace rpboost
