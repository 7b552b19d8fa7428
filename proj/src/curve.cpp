#include "tsncalc/curve.hpp"

#include <algorithm>
#include <string>

namespace tsncalc {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw ParameterError("curve: " + what); }

}  // namespace

Curve::Curve(std::vector<Breakpoint> points, Rational tail_slope, std::optional<Unbounded> unbounded)
    : points_(std::move(points)), tail_slope_(std::move(tail_slope)), unbounded_(std::move(unbounded)) {
    validate();
    normalize();
}

void Curve::validate() const {
    if (points_.empty()) invalid("at least one breakpoint required");
    if (points_.front().x != 0) invalid("first breakpoint must be at x = 0");
    if (points_.front().left != points_.front().value) invalid("left limit at 0 must equal f(0)");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        const auto& p = points_[k];
        if (p.left.sign() < 0) invalid("negative value");
        if (!(p.left <= p.value && p.value <= p.right)) invalid("breakpoint requires left <= value <= right");
        if (k > 0) {
            const auto& q = points_[k - 1];
            if (!(q.x < p.x)) invalid("breakpoints must be strictly increasing");
            if (p.left < q.right) invalid("segment decreases");
        }
    }
    if (tail_slope_.sign() < 0) invalid("negative terminal slope");
    if (unbounded_) {
        const auto& last = points_.back();
        if (unbounded_->from < last.x) invalid("unbounded region starts before last breakpoint");
        if (unbounded_->from == last.x && points_.size() != 1)
            invalid("unbounded region must start after the last breakpoint");
    }
}

Rational Curve::segment_slope(std::size_t k) const {
    if (k + 1 < points_.size()) {
        const auto& a = points_[k];
        const auto& b = points_[k + 1];
        return (b.left - a.right) / (b.x - a.x);
    }
    return tail_slope_;
}

void Curve::normalize() {
    if (unbounded_ && unbounded_->from == 0) {
        auto& p = points_.front();
        p.right = p.value;
        tail_slope_ = 0;
    }
    std::vector<Breakpoint> kept;
    kept.reserve(points_.size());
    kept.push_back(points_.front());
    for (std::size_t k = 1; k < points_.size(); ++k) {
        const auto& p = points_[k];
        const bool continuous = p.left == p.value && p.value == p.right;
        if (continuous) {
            const auto& prev = kept.back();
            const Rational slope_in = (p.left - prev.right) / (p.x - prev.x);
            const Rational slope_out = segment_slope(k);
            if (slope_in == slope_out) continue;
        }
        kept.push_back(p);
    }
    points_ = std::move(kept);
}

Curve Curve::zero() { return Curve({{0, 0, 0, 0}}, 0); }

Curve Curve::identity() { return Curve({{0, 0, 0, 0}}, 1); }

Curve Curve::affine(const Rational& rate, const Rational& offset) {
    if (rate.sign() < 0 || offset.sign() < 0) throw ParameterError("affine curve needs rate >= 0 and offset >= 0");
    return Curve({{0, offset, offset, offset}}, rate);
}

Curve Curve::affine_positive(const Rational& rate, const Rational& offset) {
    if (rate.sign() < 0) throw ParameterError("affine curve needs rate >= 0");
    return shift_compose(Curve({{0, 0, 0, 0}}, rate), 0, offset);
}

Curve Curve::token_bucket(const Rational& sigma, const Rational& rho) {
    if (sigma.sign() < 0 || rho.sign() < 0) throw ParameterError("token bucket needs sigma >= 0 and rho >= 0");
    return Curve({{0, 0, 0, sigma}}, rho);
}

Curve Curve::latency_rate(const Rational& rate, const Rational& latency) {
    if (rate.sign() < 0 || latency.sign() < 0)
        throw ParameterError("latency-rate curve needs rate >= 0 and latency >= 0");
    if (latency.sign() == 0) return Curve({{0, 0, 0, 0}}, rate);
    return Curve({{0, 0, 0, 0}, {latency, 0, 0, 0}}, rate);
}

Rational Curve::finite_eval(const Rational& x, Side side) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](const Rational& v, const Breakpoint& p) { return v < p.x; });
    const std::size_t k = static_cast<std::size_t>(std::distance(points_.begin(), it)) - 1;
    const auto& p = points_[k];
    if (p.x == x) {
        switch (side) {
            case Side::left: return p.left;
            case Side::point: return p.value;
            case Side::right: return p.right;
        }
    }
    return p.right + segment_slope(k) * (x - p.x);
}

ExtendedValue Curve::eval(const Rational& x, Side side) const {
    if (x.sign() < 0) throw std::domain_error("curve evaluated at negative x");
    if (unbounded_) {
        const Rational& from = unbounded_->from;
        if (x > from) return ExtendedValue::infinite();
        if (x == from) {
            if (side == Side::right) return ExtendedValue::infinite();
            if (side == Side::point || from == 0)
                return unbounded_->inclusive ? ExtendedValue::infinite() : ExtendedValue(finite_eval(x, Side::left));
            return finite_eval(x, Side::left);
        }
    }
    return finite_eval(x, side);
}

Rational Curve::at(const Rational& x, Side side) const {
    auto v = eval(x, side);
    if (v.is_infinite()) throw std::domain_error("curve is infinite at x = " + x.str());
    return v.value();
}

Rational Curve::slope_right(const Rational& x) const {
    if (unbounded_ && x >= unbounded_->from) throw std::domain_error("slope inside unbounded region");
    auto it = std::upper_bound(points_.begin(), points_.end(), x,
                               [](const Rational& v, const Breakpoint& p) { return v < p.x; });
    return segment_slope(static_cast<std::size_t>(std::distance(points_.begin(), it)) - 1);
}

ExtendedValue Curve::long_run_slope() const {
    if (unbounded_) return ExtendedValue::infinite();
    return tail_slope_;
}

std::vector<Rational> Curve::critical_points() const {
    std::vector<Rational> xs;
    xs.reserve(points_.size() + 1);
    for (const auto& p : points_) xs.push_back(p.x);
    if (unbounded_ && unbounded_->from != points_.back().x) xs.push_back(unbounded_->from);
    return xs;
}

Curve Curve::with_zero_at_origin() const {
    auto pts = points_;
    auto unb = unbounded_;
    pts.front().left = 0;
    pts.front().value = 0;
    if (unb && unb->from == 0) {
        unb->inclusive = false;
        pts.front().right = 0;
    }
    return Curve(std::move(pts), tail_slope_, unb);
}

// ---------------------------------------------------------------------------
// Pseudo-inverses. The completed graph of a nondecreasing curve (jumps filled
// by vertical segments) is a monotone path; swapping axes gives the graph of
// both pseudo-inverses, which differ only in the value picked on vertical runs.

namespace {

struct Vertex {
    Rational x;
    Rational y;
};

struct Path {
    std::vector<Vertex> vertices;
    bool vertical_tail = false;  // ends in an upward ray
    Rational tail_slope;         // used when !vertical_tail
};

enum class PointRule { first, last };

void push_vertex(std::vector<Vertex>& vs, Rational x, Rational y) {
    if (!vs.empty() && vs.back().x == x && vs.back().y == y) return;
    vs.push_back({std::move(x), std::move(y)});
}

Path to_path(const Curve& f) {
    Path path;
    const auto& pts = f.points();
    push_vertex(path.vertices, 0, pts.front().value);
    push_vertex(path.vertices, 0, pts.front().right);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        push_vertex(path.vertices, pts[k].x, pts[k].left);
        push_vertex(path.vertices, pts[k].x, pts[k].right);
    }
    if (const auto& unb = f.unbounded()) {
        if (unb->from > pts.back().x) push_vertex(path.vertices, unb->from, f.at(unb->from, Side::left));
        path.vertical_tail = true;
    } else {
        path.tail_slope = f.tail_slope();
    }
    return path;
}

Path swap_axes(const Path& p) {
    Path out;
    if (p.vertices.front().y.sign() > 0) push_vertex(out.vertices, 0, 0);
    for (const auto& v : p.vertices) push_vertex(out.vertices, v.y, v.x);
    if (p.vertical_tail) {
        out.tail_slope = 0;
    } else if (p.tail_slope.sign() == 0) {
        out.vertical_tail = true;
    } else {
        out.tail_slope = Rational(1) / p.tail_slope;
    }
    return out;
}

Curve from_path(const Path& path, PointRule rule) {
    struct Group {
        Rational x;
        Rational first;
        Rational last;
    };
    std::vector<Group> groups;
    for (const auto& v : path.vertices) {
        if (!groups.empty() && groups.back().x == v.x) {
            groups.back().last = v.y;
        } else {
            groups.push_back({v.x, v.y, v.y});
        }
    }
    auto to_bp = [&](const Group& g) {
        const Rational& value = rule == PointRule::first ? g.first : g.last;
        if (g.x == 0) return Breakpoint{0, value, value, g.last};
        return Breakpoint{g.x, g.first, value, g.last};
    };

    if (!path.vertical_tail) {
        std::vector<Breakpoint> pts;
        for (const auto& g : groups) pts.push_back(to_bp(g));
        return Curve(std::move(pts), path.tail_slope);
    }

    const bool inclusive = rule == PointRule::last;
    if (groups.size() == 1) {
        const Rational& v = groups.front().first;
        return Curve({{0, v, v, v}}, 0, Curve::Unbounded{0, inclusive});
    }
    const Group ray = groups.back();
    groups.pop_back();
    std::vector<Breakpoint> pts;
    for (const auto& g : groups) pts.push_back(to_bp(g));
    const Group& prev = groups.back();
    Rational slope = (ray.first - prev.last) / (ray.x - prev.x);
    return Curve(std::move(pts), slope, Curve::Unbounded{ray.x, inclusive});
}

}  // namespace

Curve lower_pseudo_inverse(const Curve& f) { return from_path(swap_axes(to_path(f)), PointRule::first); }

Curve upper_pseudo_inverse(const Curve& f) { return from_path(swap_axes(to_path(f)), PointRule::last); }

// ---------------------------------------------------------------------------

ExtendedValue vertical_distance(const Curve& f, const Curve& g) {
    std::vector<Rational> xs = f.critical_points();
    for (auto& x : g.critical_points()) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::optional<Rational> best;
    auto consider = [&](const Rational& x, Side side) -> bool {
        const ExtendedValue fv = f.eval(x, side);
        if (fv.is_infinite()) return false;
        const ExtendedValue gv = g.eval(x, side);
        if (gv.is_infinite()) return true;
        const Rational d = gv.value() - fv.value();
        if (!best || *best < d) best = d;
        return false;
    };
    for (const auto& x : xs) {
        if (x.sign() > 0 && consider(x, Side::left)) return ExtendedValue::infinite();
        if (consider(x, Side::point)) return ExtendedValue::infinite();
        if (consider(x, Side::right)) return ExtendedValue::infinite();
    }
    // Beyond the last critical point both curves are affine or infinite.
    const bool f_finite_tail = !f.unbounded().has_value();
    if (f_finite_tail) {
        if (g.unbounded()) return ExtendedValue::infinite();
        if (g.tail_slope() > f.tail_slope()) return ExtendedValue::infinite();
    }
    if (!best) throw std::domain_error("vertical distance undefined: f is infinite everywhere");
    return *best;
}

ExtendedValue horizontal_distance(const Curve& f, const Curve& g) {
    // sup_x (g_down(f(x)) - x)^+ equals (sup_y g_down(y) - f_down(y))^+.
    const ExtendedValue v = vertical_distance(lower_pseudo_inverse(f), lower_pseudo_inverse(g));
    if (v.is_infinite()) return v;
    return positive_part(v.value());
}

Curve shift_compose(const Curve& f, const Rational& x_shift, const Rational& y_shift) {
    if (x_shift.sign() < 0) throw ParameterError("shift_compose requires x_shift >= 0");

    std::vector<Breakpoint> pts;
    Rational tail = f.tail_slope();
    std::optional<Curve::Unbounded> unb;
    const auto& src_unb = f.unbounded();

    if (src_unb && src_unb->from <= x_shift) {
        const bool at_shift = src_unb->from == x_shift;
        const bool inf_at_zero = !at_shift || src_unb->inclusive;
        Rational v = inf_at_zero ? Rational(0) : f.at(x_shift, Side::point);
        pts.push_back({0, v, v, v});
        unb = Curve::Unbounded{0, inf_at_zero};
        tail = 0;
    } else {
        const Rational v0 = f.at(x_shift, Side::point);
        const Rational r0 = f.at(x_shift, Side::right);
        pts.push_back({0, v0, v0, r0});
        for (const auto& p : f.points())
            if (p.x > x_shift) pts.push_back({p.x - x_shift, p.left, p.value, p.right});
        if (src_unb) unb = Curve::Unbounded{src_unb->from - x_shift, src_unb->inclusive};
    }

    // Shift values and clip at zero, inserting the zero crossing where a
    // segment passes through it.
    std::vector<Breakpoint> out;
    auto clip = [](const Rational& v) { return positive_part(v); };
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& p = pts[k];
        const Rational l = p.left + y_shift;
        const Rational v = p.value + y_shift;
        const Rational r = p.right + y_shift;
        out.push_back({p.x, clip(l), clip(v), clip(r)});
        const bool has_next = k + 1 < pts.size();
        const Rational end_x = has_next ? pts[k + 1].x : (unb ? unb->from : Rational(0));
        const Rational slope = has_next ? (pts[k + 1].left - p.right) / (pts[k + 1].x - p.x) : tail;
        if (r.sign() < 0 && slope.sign() > 0) {
            const Rational cross = p.x + (-r) / slope;
            const bool bounded_segment = has_next || unb.has_value();
            if (!bounded_segment || cross < end_x) {
                out.push_back({cross, 0, 0, 0});
            } else if (!has_next) {
                tail = 0;  // the curve never becomes positive before the unbounded region
            }
        }
    }
    return Curve(std::move(out), tail, unb);
}

}  // namespace tsncalc
