#pragma once

#include <cstdint>

#include "ksp/mp.hpp"

namespace ksp::rng {

// Pinned generator identity; recorded in experiment metadata so results can
// be replayed across versions.
inline constexpr const char* kGeneratorId = "xoshiro256++/splitmix64";
inline constexpr const char* kNormalMethod = "inverse-cdf/AS241";

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Substreams derived from (seed, stream) are independent of scheduling:
    // replication r always sees the same stream regardless of worker count.
    static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t sm = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        Xoshiro256pp g(0);
        for (auto& word : g.state_) word = splitmix64(sm);
        return g;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Strictly inside (0,1); safe as an inverse-CDF argument.
    double uniform_open01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal();

    // n uniformly random bits as a Bigint in [0, 2^n).
    mp::Bigint bits(std::int64_t n);

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

// Wichura's AS241 (PPND16): double-precision quantile of the standard normal.
double standard_normal_quantile(double p);
double standard_normal_cdf(double x);

}  // namespace ksp::rng
