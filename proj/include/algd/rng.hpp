#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace algd {

/// SplitMix64 generator. Chosen over std::mt19937 + distributions because its
/// output stream is fully specified by the algorithm, so seeded reports are
/// byte-identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Point in the box [-1,1]^dim, the default sample box for all batteries.
    std::vector<double> box_point(int dim) {
        std::vector<double> p(static_cast<std::size_t>(dim));
        for (auto& c : p) c = uniform(-1.0, 1.0);
        return p;
    }

  private:
    std::uint64_t state_;
};

/// FNV-1a, used to derive independent per-check streams from (seed, label) so
/// that report contents do not depend on check execution order.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline Rng derived_rng(std::uint64_t seed, std::string_view label) {
    return Rng(seed ^ fnv1a(label));
}

} // namespace algd
