#include "tsvar/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "tsvar/errors.hpp"

namespace tsvar {

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial Polynomial::constant(std::vector<std::string> variables, const mpq_class& c)
{
    Polynomial p(std::move(variables));
    p.add_term(Exponents(p.arity(), 0U), c);
    return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, std::size_t index)
{
    Polynomial p(std::move(variables));
    Exponents e(p.arity(), 0U);
    e.at(index) = 1;
    p.add_term(e, mpq_class(1));
    return p;
}

std::size_t Polynomial::index_of(std::string_view name) const
{
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) {
        throw DomainError("unknown variable '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - variables_.begin());
}

unsigned Polynomial::degree() const
{
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned total = 0;
        for (unsigned k : e) {
            total += k;
        }
        d = std::max(d, total);
    }
    return d;
}

void Polynomial::add_term(const Exponents& e, const mpq_class& c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Scalar Polynomial::operator()(std::span<const Scalar> args) const
{
    if (args.size() != arity()) {
        throw DomainError("polynomial expects " + std::to_string(arity()) + " arguments, got "
                          + std::to_string(args.size()));
    }
    Scalar sum(0);
    for (const auto& [e, c] : terms_) {
        Scalar term{mpq_class(c)};
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                term *= pow(args[i], e[i]);
            }
        }
        sum += term;
    }
    bool all_exact = std::all_of(args.begin(), args.end(), [](const Scalar& s) { return s.is_exact(); });
    return all_exact ? sum : Scalar(sum.to_double());
}

Polynomial Polynomial::derivative(std::size_t index) const
{
    if (index >= arity()) {
        throw DomainError("derivative index out of range");
    }
    Polynomial d(variables_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0) {
            continue;
        }
        Exponents de = e;
        de[index] -= 1;
        d.add_term(de, c * e[index]);
    }
    return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    if (rhs.variables_ != variables_) {
        throw DomainError("polynomials over different variables");
    }
    for (const auto& [e, c] : rhs.terms_) {
        add_term(e, c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs)
{
    if (rhs.variables_ != variables_) {
        throw DomainError("polynomials over different variables");
    }
    for (const auto& [e, c] : rhs.terms_) {
        add_term(e, -c);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs)
{
    if (rhs.variables_ != variables_) {
        throw DomainError("polynomials over different variables");
    }
    Polynomial product(variables_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            product.add_term(e, ca * cb);
        }
    }
    terms_ = std::move(product.terms_);
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) {
        coeff *= c;
    }
    return *this;
}

std::string Polynomial::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    // Highest total degree first reads naturally.
    std::vector<std::pair<Exponents, mpq_class>> ordered(terms_.rbegin(), terms_.rend());
    for (const auto& [e, c] : ordered) {
        mpq_class mag = abs(c);
        bool negative = sgn(c) < 0;
        if (out.empty()) {
            if (negative) {
                out += "-";
            }
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += variables_[i];
            if (e[i] > 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        if (mono.empty()) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += mono;
        } else {
            out += mag.get_str() + "*" + mono;
        }
    }
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::vector<std::string> variables)
        : text_(text), variables_(std::move(variables))
    {
    }

    Polynomial parse()
    {
        Polynomial p = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw ParseError("polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_)
                         + ": " + why);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression()
    {
        skip_space();
        Polynomial sum(variables_);
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        Polynomial first = term();
        if (negate) {
            first *= mpq_class(-1);
        }
        sum += first;
        while (true) {
            if (accept('+')) {
                sum += term();
            } else if (accept('-')) {
                sum -= term();
            } else {
                break;
            }
        }
        return sum;
    }

    Polynomial term()
    {
        Polynomial product = power();
        while (true) {
            if (accept('*')) {
                product *= power();
            } else if (accept('/')) {
                Polynomial divisor = power();
                if (divisor.degree() != 0 || divisor.is_zero()) {
                    fail("division only by a nonzero constant");
                }
                mpq_class c = divisor.terms().begin()->second;
                product *= mpq_class(1 / c);
            } else {
                break;
            }
        }
        return product;
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected a non-negative integer exponent");
            }
            unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (k > 64) {
                fail("exponent too large");
            }
            Polynomial result = Polynomial::constant(variables_, mpq_class(1));
            for (unsigned long i = 0; i < k; ++i) {
                result *= base;
            }
            return result;
        }
        return base;
    }

    Polynomial primary()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (c == '-') {
            ++pos_;
            Polynomial inner = power();
            inner *= mpq_class(-1);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t save = pos_++;
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                    ++pos_;
                }
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        ++pos_;
                    }
                } else {
                    pos_ = save;
                }
            }
            Scalar value = Scalar::parse(text_.substr(start, pos_ - start));
            return Polynomial::constant(variables_, value.exact());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string_view name = text_.substr(start, pos_ - start);
            auto it = std::find(variables_.begin(), variables_.end(), name);
            if (it == variables_.end()) {
                pos_ = start;
                fail("unknown variable '" + std::string(name) + "'");
            }
            return Polynomial::variable(variables_, static_cast<std::size_t>(it - variables_.begin()));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::vector<std::string> variables_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial Polynomial::parse(std::string_view text, std::vector<std::string> variables)
{
    return Parser(text, std::move(variables)).parse();
}

} // namespace tsvar
