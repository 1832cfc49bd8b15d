#pragma once

#include <cstdint>

namespace gi0 {

// Counter-based uniform generator. Every draw is a pure function of
// (key, counter), so independent streams can be derived for any
// (seed, cell, replicate, channel) tuple and evaluated in any order
// without shared state.
namespace rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t word) {
    return mix(key ^ (word + kGolden + (key << 6) + (key >> 2)));
}

// Uniform in the open interval (0, 1); never returns an endpoint.
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace rng

// Stream of uniforms indexed by a counter. Copyable, no hidden state.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t key) : key_(key) {}

    // Derive a child stream; order of derivation words matters.
    UniformStream child(std::uint64_t word) const {
        return UniformStream(rng::combine(key_, word));
    }

    // i-th uniform of this stream, in (0, 1).
    double at(std::uint64_t index) const {
        return rng::to_unit(rng::mix(key_ ^ rng::mix(index)));
    }

    double next() { return at(counter_++); }

    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline UniformStream make_stream(std::uint64_t seed) {
    return UniformStream(rng::mix(seed));
}

}  // namespace gi0
