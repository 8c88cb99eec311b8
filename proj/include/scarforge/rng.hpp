#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace scarforge {

/// Source of uniform draws in [0, 1). Every stochastic operation in the
/// library consumes randomness exclusively through this interface so that
/// tests can replay a scripted sequence.
class UniformSource {
public:
    virtual ~UniformSource() = default;

    virtual double next_unit() = 0;

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Uniform index in [0, n). n must be > 0.
    std::size_t index(std::size_t n) {
        auto i = static_cast<std::size_t>(next_unit() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-record seed: mix64(master_seed ^ mix64(record_index)).
constexpr std::uint64_t record_seed(std::uint64_t master_seed, std::uint64_t record_index) noexcept {
    return mix64(master_seed ^ mix64(record_index));
}

/// mt19937_64 with a fixed, portable unit mapping: the top 53 bits of each
/// output scaled by 2^-53.
class Rng final : public UniformSource {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double next_unit() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Replays a fixed list of unit draws; throws std::out_of_range when exhausted.
class ScriptedSource final : public UniformSource {
public:
    explicit ScriptedSource(std::vector<double> draws) : draws_(std::move(draws)) {}

    double next_unit() override;

    std::size_t consumed() const noexcept { return pos_; }

private:
    std::vector<double> draws_;
    std::size_t pos_ = 0;
};

} // namespace scarforge
