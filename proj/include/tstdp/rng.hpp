#pragma once

#include <cstdint>
#include <random>

namespace tstdp {

/// One SplitMix64 scrambling step.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and a stream index.
/// Used wherever work items (grid points, trials, MC runs) need their own
/// reproducible randomness regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Deterministic random source. std::mt19937_64 supplies the raw bits; the
/// floating-point transforms are hand-rolled so that sequences are identical
/// across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Exponential with the given rate (mean 1/rate); rate must be > 0.
    double exponential(double rate);

    /// Gaussian via Box-Muller; the second variate of each pair is cached.
    double normal(double mean, double sigma);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace tstdp
