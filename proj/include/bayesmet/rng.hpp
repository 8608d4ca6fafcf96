#pragma once

#include <cstdint>

namespace bayesmet {

/// Counter-based generator: every draw is a SplitMix64 finalizer applied to
/// (seed, stream, counter). Stateless across streams, so parallel samplers
/// derive independent streams from their sample index and results do not
/// depend on the thread count.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        key_ = mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL));
        ctr_ = 0;
    }

    std::uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace bayesmet
