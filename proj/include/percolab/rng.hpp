#pragma once

#include <cstdint>

namespace percolab {

// splitmix64 finalizer; the avalanche stage used everywhere below.
constexpr uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Counter-based randomness: value depends only on (seed, tag, trial, index).
// Used for site/tile colors so that (a) trials are order-independent and
// (b) open sets are pointwise monotone-coupled across p for a shared seed.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t tag)
        : key_(mix64(seed + kGolden * (tag + 1))) {}

    uint64_t bits(uint64_t trial, uint64_t index) const {
        return mix64((key_ ^ mix64(trial + 0x632be59bd9b4e019ULL)) + index * kGolden);
    }

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform(uint64_t trial, uint64_t index) const {
        return static_cast<double>(bits(trial, index) >> 11) * 0x1.0p-53;
    }

  private:
    uint64_t key_;
};

// Sequential stream (splitmix64) for per-trial sampling work where a counter
// layout buys nothing (Poisson counts, point coordinates).
class SplitMix {
  public:
    explicit SplitMix(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

  private:
    uint64_t state_;
};

// Derives the per-trial stream seed from (master seed, experiment tag, trial)
// with the same mixing everywhere so independent implementations can replay.
inline uint64_t trial_stream_seed(uint64_t seed, uint64_t tag, uint64_t trial) {
    return mix64(mix64(seed + kGolden * (tag + 1)) ^ mix64(trial + 0x632be59bd9b4e019ULL));
}

// Experiment tags feeding the mixers. Frozen; changing one changes every
// published CSV.
enum class StreamTag : uint64_t {
    kSites = 1,
    kTileColors = 2,
    kPoisson = 3,
    kCellColors = 4,
    kBootstrap = 5,
    kDelaunayTies = 6,
    kDefects = 7,
};

}  // namespace percolab
