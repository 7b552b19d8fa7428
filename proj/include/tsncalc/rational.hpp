#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsncalc {

// Exact arbitrary-precision rational. All times are seconds, data is bits,
// rates are bits/second.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t v) : q_(static_cast<long>(v)) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "p/q", and plain decimals such as "0.25".
    static Rational parse(std::string_view text);

    std::string str() const { return q_.get_str(); }
    // Decimal rendering rounded half away from zero to `digits` places,
    // trailing zeros stripped.
    std::string decimal(int digits = 6) const;
    double to_double() const { return q_.get_d(); }

    const mpq_class& raw() const { return q_; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational positive_part(const Rational& a) { return a.sign() < 0 ? Rational(0) : a; }

// A Rational or +infinity. Used wherever a supremum or pseudo-inverse may diverge.
class ExtendedValue {
public:
    ExtendedValue() = default;
    ExtendedValue(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
    ExtendedValue(std::int64_t v) : value_(v) {}         // NOLINT(implicit)

    static ExtendedValue infinite() {
        ExtendedValue e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    // Throws std::logic_error when infinite.
    const Rational& value() const;

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

    friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtendedValue& a, const ExtendedValue& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    friend ExtendedValue operator+(const ExtendedValue& a, const Rational& b) {
        return a.infinite_ ? a : ExtendedValue(a.value_ + b);
    }
    friend ExtendedValue operator-(const ExtendedValue& a, const Rational& b) {
        return a.infinite_ ? a : ExtendedValue(a.value_ - b);
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedValue& e) { return os << e.str(); }

private:
    Rational value_{};
    bool infinite_ = false;
};

inline ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b) { return a < b ? b : a; }

// Errors raised for invalid model parameters (negative rates, lMin > lMax, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace tsncalc
