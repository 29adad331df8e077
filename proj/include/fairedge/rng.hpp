#pragma once

#include <cstdint>
#include <random>

namespace fairedge {

/// Named sub-streams derived from one master seed. Each pipeline stage draws
/// from its own stream so that changing one stage leaves the others' random
/// sequences untouched.
enum class Stream : std::uint64_t {
    GraphGen = 1,
    TreapPriority = 2,
    Walk = 3,
    Greedy = 4,
    Trial = 5,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Split function: seed of sub-stream `stream` (optionally indexed, e.g. by
/// trial number) under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index = 0) noexcept
{
    return mix64(mix64(master ^ (static_cast<std::uint64_t>(stream) * 0xd1342543de82ef95ULL)) + index);
}

class Rng {
public:
    using Engine = std::mt19937_64;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n)
    {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    /// Uniform real in [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    bool bernoulli(double p)
    {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

    std::uint64_t next_u64() { return engine_(); }

    Engine& engine() noexcept { return engine_; }

private:
    Engine engine_;
};

} // namespace fairedge
