#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace tsvar {

/// How a time scale stores its points: exact rationals or binary doubles.
enum class NumericMode { rational, floating };

std::string_view to_string(NumericMode mode);
NumericMode parse_numeric_mode(std::string_view text);

/// A real number that is either an exact rational or a double.
///
/// Arithmetic between two exact values stays exact; as soon as one operand is
/// a double the result is a double. Comparisons are always exact, a double is
/// compared through its exact binary value.
class Scalar {
public:
    Scalar() : value_(mpq_class(0)) {}
    Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
    template <std::integral I>
    Scalar(I i) : value_(mpq_class(static_cast<long>(i))) {}
    Scalar(double d) : value_(d) {}

    static Scalar ratio(long num, long den);

    /// Parses "p", "p/q" or a decimal literal ("0.25", "-1.5e-3") exactly.
    static Scalar parse(std::string_view text);

    /// Exact rational equal to the shortest decimal that round-trips `d`
    /// (0.1 becomes 1/10 rather than its binary expansion).
    static Scalar decimal(double d);

    bool is_exact() const noexcept { return std::holds_alternative<mpq_class>(value_); }
    const mpq_class& exact() const;
    double to_double() const;
    bool is_finite() const;

    /// Converts into the representation used by `mode`.
    Scalar in_mode(NumericMode mode) const;

    /// "p" or "p/q" for exact values, shortest round-trip decimal otherwise.
    std::string str() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
    Scalar operator-() const;

    friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);
    friend bool operator==(const Scalar& lhs, const Scalar& rhs) {
        return (lhs <=> rhs) == std::strong_ordering::equal;
    }

    bool is_zero() const;
    int sign() const;

private:
    std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar& x);
Scalar pow(const Scalar& x, unsigned exponent);
const Scalar& min(const Scalar& a, const Scalar& b);
const Scalar& max(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Shortest decimal string that round-trips through `strtod`.
std::string format_double(double d);

} // namespace tsvar
