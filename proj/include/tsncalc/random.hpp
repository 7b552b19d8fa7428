#pragma once

#include "tsncalc/rational.hpp"

#include <cstdint>
#include <random>

namespace tsncalc {

// Seeded generator with distribution code of its own, so a seed yields the
// same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [lo, hi] by rejection sampling.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
        std::uint64_t r = next();
        while (limit != 0 && r >= limit) r = next();
        return lo + static_cast<std::int64_t>(span == 0 ? r : r % span);
    }

    // Uniform on the grid {lo + k/den} within [lo, hi].
    Rational uniform_rational(std::int64_t lo, std::int64_t hi, std::int64_t den) {
        return Rational(uniform(lo * den, hi * den), den);
    }

    bool chance(std::int64_t num, std::int64_t den) { return uniform(0, den - 1) < num; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tsncalc
