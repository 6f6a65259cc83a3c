#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace parlab {

// Counter-based splittable generator (SplitMix64 finalizer over key + counter).
//
// Output i of a stream depends only on (key, i), so streams can be split
// hierarchically: split(tag) derives an independent stream whose outputs do
// not change when sibling streams draw more or fewer values. Per-neuron /
// per-sample substreams come from split(index), which keeps earlier neurons'
// draws stable when the width or sample count changes.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed + kGolden)) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

    // Independent stream addressed by tag; does not advance this stream.
    [[nodiscard]] Rng split(std::uint64_t tag) const {
        Rng child(0);
        child.key_ = mix(key_ ^ mix(tag * kGolden + 0x9e3779b97f4a7c15ULL));
        child.counter_ = 0;
        return child;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, bound), rejection-sampled so every value is equally likely.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~0ULL / bound);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    // iid uniform over {-1, 0, +1}.
    int trit() { return static_cast<int>(below(3)) - 1; }

    // Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace parlab
