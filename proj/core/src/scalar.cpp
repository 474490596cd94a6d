#include "tsvar/scalar.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "tsvar/errors.hpp"

namespace tsvar {

std::string_view to_string(NumericMode mode)
{
    return mode == NumericMode::rational ? "rational" : "float";
}

NumericMode parse_numeric_mode(std::string_view text)
{
    if (text == "rational") {
        return NumericMode::rational;
    }
    if (text == "float") {
        return NumericMode::floating;
    }
    throw ParseError("unknown numeric mode '" + std::string(text) + "' (expected rational|float)");
}

std::string format_double(double d)
{
    if (std::isnan(d)) {
        return "nan";
    }
    if (std::isinf(d)) {
        return d > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return std::string(buf, res.ptr);
}

namespace {

mpq_class parse_integer_part(std::string_view digits, std::string_view original)
{
    if (digits.empty()) {
        throw ParseError("malformed number '" + std::string(original) + "'");
    }
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw ParseError("malformed number '" + std::string(original) + "'");
        }
    }
    return mpq_class(mpz_class(std::string(digits), 10));
}

// Decimal literal with optional sign, fraction and exponent, parsed exactly.
mpq_class parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = s.substr(e + 1);
        s = s.substr(0, e);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (exp_text.empty() || ec != std::errc() || ptr != exp_text.data() + exp_text.size()
            || exponent > 4096) {
            throw ParseError("malformed exponent in '" + std::string(text) + "'");
        }
        if (exp_negative) {
            exponent = -exponent;
        }
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view frac = s.substr(dot + 1);
        std::string_view whole = s.substr(0, dot);
        if (whole.empty() && frac.empty()) {
            throw ParseError("malformed number '" + std::string(text) + "'");
        }
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        digits = std::string(s);
    }
    mpq_class value = parse_integer_part(digits, text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0) {
        value *= scale;
    } else {
        value /= scale;
    }
    value.canonicalize();
    return negative ? mpq_class(-value) : value;
}

std::strong_ordering compare_exact(const mpq_class& a, const mpq_class& b)
{
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering compare_mixed(const mpq_class& q, double d)
{
    if (std::isnan(d)) {
        throw DomainError("comparison with NaN");
    }
    if (std::isinf(d)) {
        return d > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return compare_exact(q, mpq_class(d));
}

} // namespace

Scalar Scalar::ratio(long num, long den)
{
    if (den == 0) {
        throw DomainError("zero denominator");
    }
    return Scalar(mpq_class(num, den));
}

Scalar Scalar::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw ParseError("empty number");
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpq_class num = parse_decimal(text.substr(0, slash));
        mpq_class den = parse_decimal(text.substr(slash + 1));
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        return Scalar(mpq_class(num / den));
    }
    return Scalar(parse_decimal(text));
}

Scalar Scalar::decimal(double d)
{
    if (!std::isfinite(d)) {
        throw DomainError("non-finite value " + format_double(d));
    }
    return parse(format_double(d));
}

const mpq_class& Scalar::exact() const
{
    if (!is_exact()) {
        throw DomainError("value " + str() + " is not exact");
    }
    return std::get<mpq_class>(value_);
}

double Scalar::to_double() const
{
    if (is_exact()) {
        return std::get<mpq_class>(value_).get_d();
    }
    return std::get<double>(value_);
}

bool Scalar::is_finite() const
{
    return is_exact() || std::isfinite(std::get<double>(value_));
}

Scalar Scalar::in_mode(NumericMode mode) const
{
    if (mode == NumericMode::floating) {
        return Scalar(to_double());
    }
    if (is_exact()) {
        return *this;
    }
    return decimal(std::get<double>(value_));
}

std::string Scalar::str() const
{
    if (is_exact()) {
        return std::get<mpq_class>(value_).get_str();
    }
    return format_double(std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) += std::get<mpq_class>(rhs.value_);
    } else {
        value_ = to_double() + rhs.to_double();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) -= std::get<mpq_class>(rhs.value_);
    } else {
        value_ = to_double() - rhs.to_double();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        std::get<mpq_class>(value_) *= std::get<mpq_class>(rhs.value_);
    } else {
        value_ = to_double() * rhs.to_double();
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    if (is_exact() && rhs.is_exact()) {
        if (sgn(std::get<mpq_class>(rhs.value_)) == 0) {
            throw DomainError("division by zero");
        }
        std::get<mpq_class>(value_) /= std::get<mpq_class>(rhs.value_);
    } else {
        value_ = to_double() / rhs.to_double();
    }
    return *this;
}

Scalar Scalar::operator-() const
{
    if (is_exact()) {
        return Scalar(mpq_class(-std::get<mpq_class>(value_)));
    }
    return Scalar(-std::get<double>(value_));
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs)
{
    if (lhs.is_exact() && rhs.is_exact()) {
        return compare_exact(std::get<mpq_class>(lhs.value_), std::get<mpq_class>(rhs.value_));
    }
    if (lhs.is_exact()) {
        return compare_mixed(std::get<mpq_class>(lhs.value_), std::get<double>(rhs.value_));
    }
    if (rhs.is_exact()) {
        auto c = compare_mixed(std::get<mpq_class>(rhs.value_), std::get<double>(lhs.value_));
        return 0 <=> c;
    }
    double a = std::get<double>(lhs.value_);
    double b = std::get<double>(rhs.value_);
    if (std::isnan(a) || std::isnan(b)) {
        throw DomainError("comparison with NaN");
    }
    return a < b ? std::strong_ordering::less
                 : (a > b ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool Scalar::is_zero() const
{
    return sign() == 0;
}

int Scalar::sign() const
{
    if (is_exact()) {
        return sgn(std::get<mpq_class>(value_));
    }
    double d = std::get<double>(value_);
    return (d > 0) - (d < 0);
}

Scalar abs(const Scalar& x)
{
    return x.sign() < 0 ? -x : x;
}

Scalar pow(const Scalar& x, unsigned exponent)
{
    Scalar result(1);
    Scalar base = x;
    while (exponent > 0) {
        if (exponent & 1U) {
            result *= base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base *= base;
        }
    }
    return result;
}

const Scalar& min(const Scalar& a, const Scalar& b)
{
    return b < a ? b : a;
}

const Scalar& max(const Scalar& a, const Scalar& b)
{
    return a < b ? b : a;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x)
{
    return os << x.str();
}

} // namespace tsvar
