#include "rpboost/rng.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rpboost/errors.hpp"

namespace rpboost {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw ValueError("Rng::below: n must be >= 1");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x < threshold);
    return x % n;
}

double Rng::normal(double mean, double variance) {
    if (variance < 0.0) {
        throw ValueError("Rng::normal: negative variance " +
                         std::to_string(variance));
    }
    if (variance == 0.0) return mean;
    const double sd = std::sqrt(variance);
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return mean + sd * u * f;
}

DenseMatrix projection_matrix(Rng& rng, std::size_t d, std::size_t m) {
    if (d == 0 || m == 0) {
        throw ValueError("projection_matrix: dimensions must be >= 1, got " +
                         std::to_string(d) + "x" + std::to_string(m));
    }
    const double variance = 1.0 / static_cast<double>(d);
    DenseMatrix r(d, m);
    double* p = r.data();
    for (std::size_t i = 0; i < d * m; ++i) p[i] = rng.normal(0.0, variance);
    return r;
}

std::vector<std::size_t> shuffled_indices(Rng& rng, std::size_t n) {
    if (n == 0) throw ValueError("shuffled_indices: n must be >= 1");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = rng.below(i + 1);
        std::swap(idx[i], idx[j]);
    }
    return idx;
}

}  // namespace rpboost
