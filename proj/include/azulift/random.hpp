#pragma once

#include "azulift/rational.hpp"

#include <cstdint>
#include <random>

namespace azulift {

/// Seeded generator with explicit modulo mapping, so draws are identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : g_(seed) {}

    uint64_t next() { return g_(); }
    /// Uniform-ish integer in [lo, hi].
    int64_t range(int64_t lo, int64_t hi) {
        const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next() % span);
    }
    /// Nonzero integer with |v| <= h.
    int64_t nonzero(int64_t h) {
        int64_t v = range(1, h);
        return (next() & 1) ? v : -v;
    }
    /// Rational p/q with |p| <= h and 1 <= q <= h.
    Rational rational(int64_t h) { return {range(-h, h), range(1, h)}; }
    Rational nonzero_rational(int64_t h) { return {nonzero(h), range(1, h)}; }
    /// Independent child seed.
    uint64_t split() { return next() ^ 0x9e3779b97f4a7c15ULL; }

private:
    std::mt19937_64 g_;
};

}  // namespace azulift
