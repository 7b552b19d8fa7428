#pragma once

#include "tsncalc/rational.hpp"

#include <optional>
#include <vector>

namespace tsncalc {

enum class Side { left, point, right };

// One breakpoint of a Curve: the left limit, the value at x, and the right limit.
// At x = 0 there is no left limit and `left` equals `value`.
struct Breakpoint {
    Rational x;
    Rational left;
    Rational value;
    Rational right;

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Nondecreasing, nonnegative piecewise-linear function on [0, inf) with upward
// jumps. Between consecutive breakpoints the curve is the line from
// `right` of the earlier one to `left` of the later one; after the last
// breakpoint it grows with `tail_slope`. An optional unbounded region makes the
// curve +inf for x > from (and at x = from when `inclusive`), which is how
// pseudo-inverses of bounded curves are represented.
class Curve {
public:
    struct Unbounded {
        Rational from;
        bool inclusive = false;
        friend bool operator==(const Unbounded&, const Unbounded&) = default;
    };

    // Validates every invariant and normalizes redundant breakpoints.
    // Throws ParameterError on violation.
    Curve(std::vector<Breakpoint> points, Rational tail_slope, std::optional<Unbounded> unbounded = {});

    static Curve zero();
    static Curve identity();
    // v -> rate * v + offset, offset >= 0.
    static Curve affine(const Rational& rate, const Rational& offset);
    // (rate * v + offset)^+ for any sign of offset.
    static Curve affine_positive(const Rational& rate, const Rational& offset);
    // 0 at t = 0, rho * t + sigma for t > 0.
    static Curve token_bucket(const Rational& sigma, const Rational& rho);
    // R * (t - T)^+.
    static Curve latency_rate(const Rational& rate, const Rational& latency);

    const std::vector<Breakpoint>& points() const { return points_; }
    const Rational& tail_slope() const { return tail_slope_; }
    const std::optional<Unbounded>& unbounded() const { return unbounded_; }

    // f(x) or its one-sided limit. Throws std::domain_error for x < 0.
    ExtendedValue eval(const Rational& x, Side side = Side::point) const;
    ExtendedValue operator()(const Rational& x) const { return eval(x); }
    // Finite point value; throws std::domain_error if the curve is infinite at x.
    Rational at(const Rational& x, Side side = Side::point) const;
    // Slope of the linear piece immediately to the right of x (0 inside an
    // unbounded region is meaningless and throws).
    Rational slope_right(const Rational& x) const;

    ExtendedValue value_at_zero() const { return eval(Rational(0)); }
    // Long-run growth rate; infinite when the curve has an unbounded region.
    ExtendedValue long_run_slope() const;
    // Breakpoint x coordinates plus the start of the unbounded region, if any.
    std::vector<Rational> critical_points() const;

    // Copy with f(0) forced to 0 (right limit at 0 unchanged).
    Curve with_zero_at_origin() const;

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    Rational segment_slope(std::size_t k) const;
    Rational finite_eval(const Rational& x, Side side) const;
    void validate() const;
    void normalize();

    std::vector<Breakpoint> points_;
    Rational tail_slope_;
    std::optional<Unbounded> unbounded_;
};

// inf {x >= 0 : f(x) >= y}; left-continuous, +inf above the range of f.
Curve lower_pseudo_inverse(const Curve& f);
// sup {x >= 0 : f(x) <= y}; right-continuous, +inf wherever the set is unbounded.
Curve upper_pseudo_inverse(const Curve& f);

// sup_x inf {y >= 0 : g(x + y) >= f(x)}.
ExtendedValue horizontal_distance(const Curve& f, const Curve& g);
// sup_x {g(x) - f(x)}; points where f is infinite are skipped.
ExtendedValue vertical_distance(const Curve& f, const Curve& g);

// v -> max(f(v + x_shift) + y_shift, 0). Requires x_shift >= 0.
Curve shift_compose(const Curve& f, const Rational& x_shift, const Rational& y_shift);

}  // namespace tsncalc
