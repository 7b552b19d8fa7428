#include "support.hpp"

#include <doctest.h>

#include <functional>

using namespace tsncalc;
using testsupport::q;
using testsupport::random_curve;
using testsupport::sample_points;

namespace {

ExtendedValue inf() { return ExtendedValue::infinite(); }

// Exact one-sided limit of a function that is linear on (c - 2e, c) or
// (c, c + 2e): extrapolate from two samples.
Rational limit_from(const std::function<Rational(const Rational&)>& h, const Rational& c, int dir) {
    const Rational e(1, 4096);
    const Rational a = h(c + Rational(dir) * e);
    const Rational b = h(c + Rational(dir) * e * Rational(2));
    return a * Rational(2) - b;
}

}  // namespace

TEST_CASE("token bucket construction and evaluation") {
    const Curve tb = Curve::token_bucket(5, 1);
    CHECK(tb.eval(0) == ExtendedValue(0));
    CHECK(tb.eval(0, Side::right) == ExtendedValue(5));
    CHECK(tb.at(q(3, 2)) == q(13, 2));
    CHECK(Curve::token_bucket(0, 0) == Curve::zero());
    CHECK(Curve::token_bucket(3000, 1000000).at(q(1, 1000)) == 4000);
    CHECK_THROWS_AS(Curve::token_bucket(-1, 0), ParameterError);
    CHECK_THROWS_AS(Curve::token_bucket(0, -1), ParameterError);
    CHECK_THROWS_AS(tb.eval(-1), std::domain_error);
}

TEST_CASE("latency-rate construction") {
    const Curve lr = Curve::latency_rate(100, 1);
    CHECK(lr.at(1) == 0);
    CHECK(lr.at(2) == 100);
    for (Side s : {Side::left, Side::point, Side::right}) CHECK(lr.at(3, s) == 200);
    CHECK(Curve::latency_rate(0, 0) == Curve::zero());
    CHECK_THROWS_AS(Curve::latency_rate(1, -1), ParameterError);
}

TEST_CASE("invalid curves are rejected") {
    CHECK_THROWS_AS(Curve({}, 0), ParameterError);
    CHECK_THROWS_AS(Curve({{1, 0, 0, 0}}, 0), ParameterError);
    CHECK_THROWS_AS(Curve({{0, 0, 0, 1}, {1, 0, 0, 0}}, 0), ParameterError);  // decreasing segment
    CHECK_THROWS_AS(Curve({{0, 0, 0, 0}, {1, 2, 1, 3}}, 0), ParameterError);  // downward jump
    CHECK_THROWS_AS(Curve({{0, 0, 0, 0}}, -1), ParameterError);
    CHECK_THROWS_AS(Curve({{0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}}, 0), ParameterError);
}

TEST_CASE("normalization drops redundant breakpoints") {
    const Curve a({{0, 0, 0, 0}, {1, 1, 1, 1}, {2, 2, 2, 2}}, 1);
    CHECK(a == Curve::identity());
    CHECK(a.points().size() == 1);
}

TEST_CASE("lower pseudo-inverse closed forms") {
    // token bucket: 0 up to sigma, then (y - sigma)/rho
    const Curve inv = lower_pseudo_inverse(Curve::token_bucket(5, 2));
    CHECK(inv.at(0) == 0);
    CHECK(inv.at(5) == 0);
    CHECK(inv.at(9) == 2);
    CHECK(inv == Curve::latency_rate(q(1, 2), 5));

    CHECK(lower_pseudo_inverse(Curve::identity()) == Curve::identity());

    // latency-rate (2, 3): 0 at 0, y/2 + 3 for y > 0
    const Curve lr = lower_pseudo_inverse(Curve::latency_rate(2, 3));
    CHECK(lr.at(0) == 0);
    CHECK(lr.at(0, Side::right) == 3);
    CHECK(lr.at(4) == 5);
}

TEST_CASE("upper pseudo-inverse closed forms") {
    CHECK(upper_pseudo_inverse(Curve::latency_rate(4, 3)) == Curve::affine(q(1, 4), 3));
    const Rational lM = 1500, c = 1000;
    CHECK(upper_pseudo_inverse(Curve::latency_rate(c, lM / c)) == Curve::affine(Rational(1) / c, lM / c));
    const Curve z = upper_pseudo_inverse(Curve::zero());
    for (const Rational& y : {q(0), q(1, 3), q(7)}) CHECK(z.eval(y).is_infinite());
}

TEST_CASE("pseudo-inverses of bounded curves are infinite above the range") {
    const Curve f({{0, 0, 0, 0}, {2, 4, 4, 4}}, 0);  // rises to 4, then flat
    const Curve lo = lower_pseudo_inverse(f);
    CHECK(lo.at(4) == 2);
    CHECK(lo.eval(q(41, 10)).is_infinite());
    const Curve up = upper_pseudo_inverse(f);
    CHECK(up.at(3) == q(3, 2));
    CHECK(up.eval(4).is_infinite());
}

TEST_CASE("lower pseudo-inverse matches its definition on random curves") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Curve f = random_curve(rng);
        const Curve inv = lower_pseudo_inverse(f);
        const Rational x_hi = f.critical_points().back() + 4;
        const auto xs = sample_points(f.critical_points(), x_hi);
        const Rational y_hi = f.at(x_hi) + 2;
        Rational prev = 0;
        for (const Rational& y : sample_points(inv.critical_points(), y_hi)) {
            const ExtendedValue r = inv.eval(y);
            if (r.is_infinite()) {
                CHECK(f.tail_slope() == 0);
                for (const auto& x : xs) CHECK(f.at(x) < y);
                continue;
            }
            CHECK(r.value() >= prev);
            prev = r.value();
            CHECK(f.at(r.value(), Side::right) >= y);
            for (const auto& x : xs)
                if (x < r.value()) CHECK(f.at(x) < y);
        }
    }
}

TEST_CASE("upper pseudo-inverse matches its definition and dominates the lower one") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const Curve f = random_curve(rng);
        const Curve up = upper_pseudo_inverse(f);
        const Curve lo = lower_pseudo_inverse(f);
        const Rational x_hi = f.critical_points().back() + 4;
        const auto xs = sample_points(f.critical_points(), x_hi);
        const Rational y_hi = f.at(x_hi) + 2;
        for (const Rational& y : sample_points(up.critical_points(), y_hi)) {
            const ExtendedValue r = up.eval(y);
            CHECK(r >= lo.eval(y));
            if (r.is_infinite()) {
                CHECK(f.tail_slope() == 0);
                for (const auto& x : xs) CHECK(f.at(x) <= y);
                continue;
            }
            for (const auto& x : xs)
                if (x > r.value()) CHECK(f.at(x) > y);
            if (f.at(0) <= y) CHECK(f.at(r.value(), r.value().sign() > 0 ? Side::left : Side::point) <= y);
        }
    }
}

TEST_CASE("pseudo-inverses agree where the curve is continuous and strictly increasing") {
    const Curve f({{0, 0, 0, 0}, {2, 2, 2, 2}}, 3);
    CHECK(lower_pseudo_inverse(f) == upper_pseudo_inverse(f));
}

TEST_CASE("horizontal distance closed forms") {
    const Rational sigma = 700, rho = 30, R = 100, T = q(3, 2);
    CHECK(horizontal_distance(Curve::token_bucket(sigma, rho), Curve::latency_rate(R, T)) == ExtendedValue(sigma / R + T));
    CHECK(horizontal_distance(Curve::token_bucket(sigma, 120), Curve::latency_rate(R, T)) == inf());
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const Curve f = random_curve(rng);
        CHECK(horizontal_distance(f, f) == ExtendedValue(0));
    }
}

TEST_CASE("horizontal distance diverges when the arrival rate exceeds the service rate") {
    const Curve a = Curve::token_bucket(10, 3);
    const Curve b = Curve::latency_rate(2, 1);
    CHECK(horizontal_distance(a, b) == inf());
    // the delay at x = 2^k grows without bound
    Rational prev = -1;
    for (int k = 0; k < 20; ++k) {
        const Rational x = Rational(std::int64_t{1} << k);
        const Rational d = (a.at(x) / 2 + 1) - x;  // b reaches a(x) at a(x)/2 + 1
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("horizontal distance is zero when g dominates f") {
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const Curve f = random_curve(rng);
        const Curve g = shift_compose(f, 0, rng.uniform_rational(0, 3, 4));
        CHECK(horizontal_distance(f, g) == ExtendedValue(0));
    }
}

TEST_CASE("horizontal distance bounds every sampled delay") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Curve f = random_curve(rng);
        const Curve g = random_curve(rng, false);
        const ExtendedValue h = horizontal_distance(f, g);
        if (h.is_infinite()) continue;
        const Rational x_hi = f.critical_points().back() + 4;
        for (const auto& x : sample_points(f.critical_points(), x_hi)) {
            const Rational target = f.at(x);
            // bisection lower estimate of inf {y : g(x + y) >= f(x)}
            if (g.at(x) >= target) continue;
            Rational lo = 0, hi = 1;
            while (g.at(x + hi) < target) hi *= 2;
            for (int it = 0; it < 30; ++it) {
                const Rational mid = (lo + hi) / 2;
                if (g.at(x + mid) >= target) hi = mid; else lo = mid;
            }
            CHECK(h.value() >= lo);
        }
    }
}

TEST_CASE("vertical distance closed forms") {
    const Rational sigma = 500, rho = 20, R = 40, E = q(7, 2);
    const Curve a_down = lower_pseudo_inverse(Curve::token_bucket(sigma, rho));
    CHECK(vertical_distance(a_down, Curve::affine(Rational(1) / R, E)) == ExtendedValue(sigma / R + E));
    CHECK(vertical_distance(Curve::zero(), Curve::token_bucket(5, 1)) == inf());
    Rng rng(6);
    for (int k = 0; k < 50; ++k) {
        const Curve f = random_curve(rng);
        CHECK(vertical_distance(f, f) == ExtendedValue(0));
    }
}

TEST_CASE("vertical distance equals the exact sampled supremum") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Curve f = random_curve(rng);
        const Curve g = random_curve(rng);
        const ExtendedValue v = vertical_distance(f, g);
        if (g.tail_slope() > f.tail_slope()) {
            CHECK(v == inf());
            continue;
        }
        REQUIRE(v.is_finite());
        auto h = [&](const Rational& x) { return g.at(x) - f.at(x); };
        std::vector<Rational> crit = f.critical_points();
        for (const auto& c : g.critical_points()) crit.push_back(c);
        Rational best = h(0);
        for (const auto& x : sample_points(crit, crit.back() + 8)) {
            CHECK(h(x) <= v.value());
            best = max(best, h(x));
        }
        for (const auto& c : crit) {
            best = max(best, limit_from(h, c, 1));
            if (c.sign() > 0) best = max(best, limit_from(h, c, -1));
        }
        CHECK(best == v.value());
    }
}

TEST_CASE("shift_compose") {
    const Curve a_down = lower_pseudo_inverse(Curve::token_bucket(5, 1));
    const Curve s = shift_compose(a_down, 2, 0);
    CHECK(s == Curve::latency_rate(1, 3));
    for (const Rational& x : {q(0), q(3), q(7, 2), q(10)}) CHECK(s.at(x) == positive_part(x - 3));

    Rng rng(8);
    for (int k = 0; k < 50; ++k) {
        const Curve f = random_curve(rng);
        CHECK(shift_compose(f, 0, 0) == f);
    }

    const Rational R = 50, E = 2, lM = 100;
    CHECK(shift_compose(Curve::affine(Rational(1) / R, E), 0, lM / R) == Curve::affine(Rational(1) / R, E + lM / R));
    CHECK_THROWS_AS(shift_compose(Curve::identity(), -1, 0), ParameterError);
}

TEST_CASE("shift_compose agrees with pointwise evaluation") {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const Curve f = random_curve(rng);
        const Rational dx = rng.uniform_rational(0, 3, 4);
        const Rational dy = rng.uniform_rational(-4, 2, 4);
        const Curve s = shift_compose(f, dx, dy);
        for (const auto& x : sample_points(s.critical_points(), s.critical_points().back() + 3))
            CHECK(s.at(x) == positive_part(f.at(x + dx) + dy));
    }
}
