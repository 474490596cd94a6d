#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "tsvar/scalar.hpp"

namespace tsvar {

/// Multivariate polynomial with exact rational coefficients over a fixed,
/// named variable list.
///
/// Parsed from a tiny grammar: sums and products of rational literals,
/// variables, parenthesised sub-expressions and non-negative integer powers,
/// e.g. "3*t^2 - 1/2*t + 4" or "y1^2 + y2^2".
class Polynomial {
public:
    using Exponents = std::vector<unsigned>;

    explicit Polynomial(std::vector<std::string> variables);

    static Polynomial parse(std::string_view text, std::vector<std::string> variables);
    static Polynomial constant(std::vector<std::string> variables, const mpq_class& c);
    static Polynomial variable(std::vector<std::string> variables, std::size_t index);

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    std::size_t arity() const noexcept { return variables_.size(); }
    const std::map<Exponents, mpq_class>& terms() const noexcept { return terms_; }

    std::size_t index_of(std::string_view name) const;
    unsigned degree() const;
    bool is_zero() const { return terms_.empty(); }

    /// Exact when every argument is exact, a double otherwise.
    Scalar operator()(std::span<const Scalar> args) const;
    Scalar operator()(std::initializer_list<Scalar> args) const
    {
        return (*this)(std::span<const Scalar>(args.begin(), args.size()));
    }

    Polynomial derivative(std::size_t index) const;
    Polynomial derivative(std::string_view name) const { return derivative(index_of(name)); }

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const mpq_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }

    /// Canonical text that parses back to the same polynomial.
    std::string str() const;

    bool operator==(const Polynomial& other) const
    {
        return variables_ == other.variables_ && terms_ == other.terms_;
    }

private:
    void add_term(const Exponents& e, const mpq_class& c);

    std::vector<std::string> variables_;
    std::map<Exponents, mpq_class> terms_;
};

} // namespace tsvar
