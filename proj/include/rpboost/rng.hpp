#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rpboost/linalg.hpp"

namespace rpboost {

/// Deterministic seeded generator. The uniform stream comes from the
/// standard-specified mt19937_64 engine and Gaussians from the Marsaglia
/// polar transform of that stream, so the same seed reproduces the same
/// draws run after run. Instances are single-owner; independent streams for
/// parallel or order-independent work come from child().
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Avalanche-mixes (seed, a, b, c) into a new seed. Used for per-run,
    /// per-round and per-projection stream derivation.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0);

    /// Independent generator keyed by (this->seed, a, b, c); does not
    /// consume or depend on this stream's position.
    Rng child(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
        return Rng(derive(seed_, a, b, c));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Unbiased integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);

    /// One deviate from N(mean, variance). variance == 0 degenerates to the
    /// mean; variance < 0 throws ValueError.
    double normal(double mean, double variance);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// d x m matrix with entries i.i.d. N(0, 1/d), filled row by row.
DenseMatrix projection_matrix(Rng& rng, std::size_t d, std::size_t m);

/// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(Rng& rng, std::size_t n);

}  // namespace rpboost
