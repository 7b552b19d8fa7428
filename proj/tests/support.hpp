#pragma once

#include "tsncalc/curve.hpp"
#include "tsncalc/random.hpp"

#include <algorithm>
#include <vector>

namespace testsupport {

using tsncalc::Breakpoint;
using tsncalc::Curve;
using tsncalc::Rational;
using tsncalc::Rng;
using tsncalc::Side;

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Random member of the curve class: a few breakpoints on a quarter grid, random
// upward jumps, flat or rising segments, optional zero tail slope.
inline Curve random_curve(Rng& rng, bool allow_flat_tail = true) {
    const int n = static_cast<int>(rng.uniform(1, 5));
    std::vector<Breakpoint> pts;
    Rational x = 0;
    Rational y = rng.chance(1, 3) ? rng.uniform_rational(0, 3, 4) : Rational(0);
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            x += rng.uniform_rational(1, 4, 4);
            // rise along the segment
            y += rng.chance(1, 4) ? Rational(0) : rng.uniform_rational(0, 6, 4);
        }
        const Rational left = y;
        const Rational value = (k == 0) ? y : (rng.chance(1, 2) ? y : y + rng.uniform_rational(0, 2, 4));
        Rational right = value + (rng.chance(1, 2) ? rng.uniform_rational(0, 3, 4) : Rational(0));
        pts.push_back({x, k == 0 ? value : left, value, right});
        y = right;
    }
    Rational tail = rng.uniform_rational(allow_flat_tail ? 0 : 1, 4, 4);
    if (tail.sign() == 0 && !allow_flat_tail) tail = 1;
    return Curve(std::move(pts), tail);
}

// Rational samples in [0, hi] on a fine grid, plus every critical point and
// small offsets around it.
inline std::vector<Rational> sample_points(const std::vector<Rational>& critical, const Rational& hi) {
    std::vector<Rational> xs;
    for (std::int64_t k = 0; Rational(k, 8) <= hi; ++k) xs.push_back(Rational(k, 8));
    const Rational eps(1, 1024);
    for (const auto& c : critical) {
        xs.push_back(c);
        xs.push_back(c + eps);
        if (c > eps) xs.push_back(c - eps);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace testsupport
