#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tsvar/polynomial.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/time_scale.hpp"

namespace tsvar {

enum class FnKind { closure, tabulated };

/// User-asserted regularity. C1rd and C1 are kept apart on purpose: C1rd only
/// asks for an rd-continuous delta derivative, C1 for a continuous one.
enum class Smoothness { none, rd_continuous, c1rd, c1 };

std::string_view to_string(Smoothness s);

/// A real-valued function on (part of) a time scale.
///
/// Besides its value, a ScaleFn can report its left limit at a point. The
/// default left limit is the value itself (continuous functions); functions
/// built from sigma or from delta derivatives override it, because those jump
/// at left-dense right-scattered points. Quadrature over an interval piece
/// samples the right end through left_limit().
class ScaleFn {
public:
    using Eval = std::function<Scalar(const Scalar&)>;

    ScaleFn(Eval value, Smoothness hint = Smoothness::none);
    ScaleFn(Eval value, Eval left_limit, Smoothness hint);

    static ScaleFn constant(Scalar c);
    static ScaleFn identity();
    /// Single-variable polynomial; the variable name is irrelevant.
    static ScaleFn polynomial(Polynomial p);
    static ScaleFn from_double(std::function<double(double)> f, Smoothness hint = Smoothness::none);

    /// Values at the points of a discrete scale. Keys are coerced onto the
    /// scale and must be members; evaluation off the table throws.
    static ScaleFn table(const TimeScale& scale, std::vector<std::pair<Scalar, Scalar>> values);

    Scalar operator()(const Scalar& t) const;
    Scalar left_limit(const Scalar& t) const;

    FnKind kind() const noexcept { return kind_; }
    Smoothness smoothness() const noexcept { return hint_; }
    ScaleFn with_smoothness(Smoothness hint) const;

    /// Restricts evaluation to `domain`; calls outside it throw DomainError.
    ScaleFn with_domain(TimeScale domain) const;

    /// For tabulated functions: the scale and its (t, value) rows in order.
    const TimeScale* table_scale() const noexcept { return table_scale_.get(); }
    const std::vector<std::pair<Scalar, Scalar>>& table_rows() const noexcept { return rows_; }

    friend ScaleFn operator+(const ScaleFn& f, const ScaleFn& g);
    friend ScaleFn operator-(const ScaleFn& f, const ScaleFn& g);
    friend ScaleFn operator*(const ScaleFn& f, const ScaleFn& g);
    friend ScaleFn operator*(const Scalar& c, const ScaleFn& f);

private:
    Eval value_;
    Eval left_;
    FnKind kind_ = FnKind::closure;
    Smoothness hint_ = Smoothness::none;
    std::shared_ptr<const TimeScale> table_scale_;
    std::vector<std::pair<Scalar, Scalar>> rows_;
};

/// f∘sigma, with the left limit f(t-) at dense junctions.
ScaleFn compose_sigma(const TimeScale& scale, const ScaleFn& f);

} // namespace tsvar
