#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace creasegen {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a stream seed from a master seed and a path of indices, e.g.
/// (identity_id, sample_id, stream tag). Distinct paths give unrelated seeds;
/// the result depends only on the arguments, never on call order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// Seeded generator with platform-independent output.
///
/// The engine is std::mt19937_64. Uniform, integer, normal and Bernoulli
/// draws use the transforms defined in this class rather than <random>
/// distribution objects.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [lo, hi] inclusive, unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform index on [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);

    /// Gaussian via the polar Box-Muller method.
    double normal(double mean = 0.0, double stddev = 1.0);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace creasegen
