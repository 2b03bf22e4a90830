#include "rpboost/boosting.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "rpboost/errors.hpp"

namespace rpboost {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

// Weight mass on instances where the +/-1 prediction disagrees with the
// label. Both sides are exact +/-1 values, so != is an exact test.
double error_mass(const Vector& pred, const Vector& y, const Vector& w) {
    double mass = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (pred[i] != y[i]) mass += w[i];
    }
    return mass;
}

Vector reweighted(const Vector& w, const Vector& pred, const Vector& y,
                  double alpha) {
    Vector out(w.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = w[i] * std::exp(-y[i] * alpha * pred[i]);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

void check_normalized(const Vector& w) {
    double sum = 0.0;
    for (double wi : w) sum += wi;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValueError("weights must sum to 1, got " + std::to_string(sum));
    }
}

// The AdaBoost outer loop shared by every boosted method. fit_round trains
// one weak learner on the current weights; everything else (error, alpha,
// reweighting, trace bookkeeping, stop rules) is identical across methods.
TrainResult boost_loop(
    const Dataset& ds, const BoostConfig& cfg, const std::string& method,
    const std::function<Learner(const Vector&, std::size_t)>& fit_round) {
    validate_config(cfg);
    require_two_classes(ds);

    const std::size_t n = ds.instance_count();
    Vector w(n, 1.0 / static_cast<double>(n));
    Vector margins(n, 0.0);

    TrainResult result;
    result.ensemble.config = cfg;
    result.ensemble.method = method;
    result.ensemble.dim = ds.feature_count();

    for (std::size_t k = 0; k < cfg.rounds; ++k) {
        const auto start = std::chrono::steady_clock::now();
        Learner h = fit_round(w, k);
        const double fit_seconds = seconds_since(start);

        const Vector pred = predict_rows(h, ds.features);
        const double epsilon = error_mass(pred, ds.labels, w);
        const bool clamped =
            epsilon < cfg.epsilon_clamp || epsilon > 1.0 - cfg.epsilon_clamp;
        const double alpha = alpha_from_error(epsilon, cfg.epsilon_clamp);

        w = reweighted(w, pred, ds.labels, alpha);

        double weight_sum = 0.0;
        for (double wi : w) weight_sum += wi;

        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            margins[i] += alpha * pred[i];
            loss += std::exp(-ds.labels[i] * margins[i]);
        }
        loss /= static_cast<double>(n);

        result.ensemble.members.push_back(Member{alpha, std::move(h)});
        result.trace.push_back(RoundRecord{epsilon, alpha, loss, fit_seconds,
                                           weight_sum,
                                           error_mass(pred, ds.labels, w),
                                           clamped});

        if (cfg.stop_on_zero_error && epsilon == 0.0) break;
        if (cfg.stop_when_no_edge && epsilon >= 0.5) break;
    }
    return result;
}

DenseMatrix draw_projection(const ProjectionFn& projection, Rng& rng,
                            std::size_t d, std::size_t m) {
    return projection ? projection(rng, d, m) : projection_matrix(rng, d, m);
}

}  // namespace

void validate_config(const BoostConfig& cfg) {
    if (cfg.rounds < 1) throw ValueError("config: rounds must be >= 1");
    if (cfg.projections < 1) {
        throw ValueError("config: projections must be >= 1");
    }
    if (cfg.subspace_dim < 1) {
        throw ValueError("config: subspace_dim must be >= 1");
    }
    if (!(cfg.lambda > 0.0)) {
        throw ValueError("config: lambda must be > 0, got " +
                         std::to_string(cfg.lambda));
    }
    if (!(cfg.epsilon_clamp > 0.0 && cfg.epsilon_clamp < 0.5)) {
        throw ValueError("config: epsilon_clamp must be in (0, 0.5), got " +
                         std::to_string(cfg.epsilon_clamp));
    }
}

Vector predict_rows(const Learner& h, const DenseMatrix& x) {
    return std::visit([&](const auto& learner) { return predict_rows(learner, x); },
                      h);
}

double weighted_error(const Learner& h, const Dataset& ds, const Vector& w) {
    if (w.size() != ds.instance_count()) {
        throw DimensionError("weighted_error: " + std::to_string(w.size()) +
                             " weights for " +
                             std::to_string(ds.instance_count()) +
                             " instances");
    }
    check_normalized(w);
    return error_mass(predict_rows(h, ds.features), ds.labels, w);
}

double alpha_from_error(double epsilon, double clamp) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ValueError("alpha_from_error: epsilon must be in [0,1], got " +
                         std::to_string(epsilon));
    }
    if (!(clamp > 0.0 && clamp < 0.5)) {
        throw ValueError("alpha_from_error: clamp must be in (0, 0.5), got " +
                         std::to_string(clamp));
    }
    const double e = std::min(std::max(epsilon, clamp), 1.0 - clamp);
    return 0.5 * std::log((1.0 - e) / e);
}

Vector update_weights(const Vector& w, const Learner& h, double alpha,
                      const Dataset& ds) {
    if (w.size() != ds.instance_count()) {
        throw DimensionError("update_weights: " + std::to_string(w.size()) +
                             " weights for " +
                             std::to_string(ds.instance_count()) +
                             " instances");
    }
    return reweighted(w, predict_rows(h, ds.features), ds.labels, alpha);
}

TrainResult train_rpboost(const Dataset& ds, const BoostConfig& cfg, Rng& rng,
                          const ProjectionFn& projection) {
    const std::size_t d = ds.feature_count();
    auto fit_round = [&](const Vector& w, std::size_t k) -> Learner {
        std::vector<SubspaceFit> fits;
        fits.reserve(cfg.projections);
        for (std::size_t p = 0; p < cfg.projections; ++p) {
            Rng child = rng.child(k, p);
            try {
                fits.push_back(weighted_subspace_fit(
                    ds, w, cfg.lambda,
                    draw_projection(projection, child, d, cfg.subspace_dim)));
            } catch (const NotPositiveDefinite& e) {
                throw NotPositiveDefinite(
                    "round " + std::to_string(k + 1) + ", projection " +
                    std::to_string(p + 1) + ": " + e.what());
            }
        }
        return recover(fits, cfg.lambda);
    };
    return boost_loop(ds, cfg, "rpboost", fit_round);
}

TrainResult train_rrcboost(const Dataset& ds, const BoostConfig& cfg) {
    auto fit_round = [&](const Vector& w, std::size_t k) -> Learner {
        try {
            return weighted_ridge_fit(ds, w, cfg.lambda);
        } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite("round " + std::to_string(k + 1) + ": " +
                                      e.what());
        }
    };
    return boost_loop(ds, cfg, "rrc-boost", fit_round);
}

LinearClassifier train_rprrc(const Dataset& ds, const BoostConfig& cfg,
                             Rng& rng, const ProjectionFn& projection) {
    validate_config(cfg);
    require_two_classes(ds);
    const std::size_t n = ds.instance_count();
    const std::size_t d = ds.feature_count();
    const Vector w(n, 1.0 / static_cast<double>(n));

    // Solutions are folded into the running average one at a time; with
    // L=300 there is no reason to keep every projection alive at once.
    Vector beta(d, 0.0);
    for (std::size_t l = 0; l < cfg.rounds; ++l) {
        Rng child = rng.child(l);
        SubspaceFit fit = weighted_subspace_fit(
            ds, w, cfg.lambda,
            draw_projection(projection, child, d, cfg.subspace_dim));
        const Vector mapped = matvec(fit.r, fit.b);
        for (std::size_t i = 0; i < d; ++i) beta[i] += mapped[i];
    }
    const double scale = 1.0 / static_cast<double>(cfg.rounds);
    for (double& v : beta) v *= scale;
    return LinearClassifier{std::move(beta), cfg.lambda};
}

TrainResult train_stumpboost(const Dataset& ds, const BoostConfig& cfg) {
    auto fit_round = [&](const Vector& w, std::size_t) -> Learner {
        return stump_fit(ds, w);
    };
    return boost_loop(ds, cfg, "stump-boost", fit_round);
}

double predict_ensemble(const Ensemble& e, const Vector& x) {
    if (e.members.empty()) {
        throw ValueError("predict_ensemble: ensemble has no members");
    }
    double vote = 0.0;
    for (const Member& m : e.members) {
        vote += m.alpha * std::visit(
                              [&](const auto& learner) {
                                  using T = std::decay_t<decltype(learner)>;
                                  if constexpr (std::is_same_v<
                                                    T, LinearClassifier>) {
                                      return predict_linear(learner, x);
                                  } else {
                                      return predict_stump(learner, x);
                                  }
                              },
                              m.learner);
    }
    return vote > 0.0 ? 1.0 : -1.0;
}

Vector ensemble_margins(const Ensemble& e, const DenseMatrix& x) {
    if (e.members.empty()) {
        throw ValueError("ensemble_margins: ensemble has no members");
    }
    Vector margins(x.rows(), 0.0);
    for (const Member& m : e.members) {
        const Vector pred = predict_rows(m.learner, x);
        for (std::size_t i = 0; i < margins.size(); ++i) {
            margins[i] += m.alpha * pred[i];
        }
    }
    return margins;
}

Vector predict_ensemble_rows(const Ensemble& e, const DenseMatrix& x) {
    Vector labels = ensemble_margins(e, x);
    for (double& v : labels) v = v > 0.0 ? 1.0 : -1.0;
    return labels;
}

double exponential_loss(const Ensemble& e, const Dataset& ds,
                        const Vector& w0) {
    if (w0.size() != ds.instance_count()) {
        throw DimensionError("exponential_loss: " + std::to_string(w0.size()) +
                             " weights for " +
                             std::to_string(ds.instance_count()) +
                             " instances");
    }
    const Vector margins = ensemble_margins(e, ds.features);
    double loss = 0.0;
    for (std::size_t i = 0; i < w0.size(); ++i) {
        loss += w0[i] * std::exp(-ds.labels[i] * margins[i]);
    }
    return loss;
}

}  // namespace rpboost
