#include "tsncalc/rational.hpp"

#include <cctype>

namespace tsncalc {

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

bool valid_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class to_mpz(std::string_view s) {
    std::string t(s);
    if (!t.empty() && t.front() == '+') t.erase(0, 1);
    return mpz_class(t, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!valid_integer(num) || !valid_integer(den)) throw bad();
        mpz_class d = to_mpz(den);
        if (d == 0) throw std::domain_error("rational with zero denominator");
        mpq_class q(to_mpz(num), d);
        q.canonicalize();
        return Rational(q);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole = "0";
        if (!valid_integer(whole) || frac.empty() || !valid_integer(frac) || frac.front() == '-' ||
            frac.front() == '+')
            throw bad();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class w = to_mpz(whole);
        if (w < 0) w = -w;
        mpq_class q(w * scale + to_mpz(frac), scale);
        if (negative) q = -q;
        q.canonicalize();
        return Rational(q);
    }
    if (!valid_integer(text)) throw bad();
    return Rational(mpq_class(to_mpz(text)));
}

std::string Rational::decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class num = q_.get_num();
    const bool negative = num < 0;
    if (negative) num = -num;
    mpz_class scaled = num * scale;
    mpz_class quotient = scaled / q_.get_den();
    mpz_class remainder = scaled % q_.get_den();
    if (2 * remainder >= q_.get_den()) quotient += 1;

    std::string s = quotient.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (negative && s != "0") s.insert(0, "-");
    return s;
}

const Rational& ExtendedValue::value() const {
    if (infinite_) throw std::logic_error("value() of an infinite ExtendedValue");
    return value_;
}

}  // namespace tsncalc
