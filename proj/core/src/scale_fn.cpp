#include "tsvar/scale_fn.hpp"

#include <algorithm>
#include <cmath>

#include "tsvar/errors.hpp"

namespace tsvar {

std::string_view to_string(Smoothness s)
{
    switch (s) {
    case Smoothness::none:
        return "none";
    case Smoothness::rd_continuous:
        return "rd-continuous";
    case Smoothness::c1rd:
        return "C1rd";
    case Smoothness::c1:
        return "C1";
    }
    return "none";
}

ScaleFn::ScaleFn(Eval value, Smoothness hint) : value_(std::move(value)), hint_(hint)
{
    if (!value_) {
        throw PreconditionError("ScaleFn needs a callable");
    }
}

ScaleFn::ScaleFn(Eval value, Eval left_limit, Smoothness hint)
    : value_(std::move(value)), left_(std::move(left_limit)), hint_(hint)
{
    if (!value_) {
        throw PreconditionError("ScaleFn needs a callable");
    }
}

ScaleFn ScaleFn::constant(Scalar c)
{
    return ScaleFn([c](const Scalar&) { return c; }, Smoothness::c1);
}

ScaleFn ScaleFn::identity()
{
    return ScaleFn([](const Scalar& t) { return t; }, Smoothness::c1);
}

ScaleFn ScaleFn::polynomial(Polynomial p)
{
    if (p.arity() != 1) {
        throw DomainError("a ScaleFn polynomial must have exactly one variable");
    }
    return ScaleFn([p = std::move(p)](const Scalar& t) { return p({t}); }, Smoothness::c1);
}

ScaleFn ScaleFn::from_double(std::function<double(double)> f, Smoothness hint)
{
    return ScaleFn([f = std::move(f)](const Scalar& t) { return Scalar(f(t.to_double())); }, hint);
}

ScaleFn ScaleFn::table(const TimeScale& scale, std::vector<std::pair<Scalar, Scalar>> values)
{
    if (!scale.is_discrete()) {
        throw UnsupportedError("tabulated functions need a purely discrete time scale");
    }
    for (auto& [t, v] : values) {
        t = scale.coerce(t);
        if (!v.is_finite()) {
            throw DomainError("non-finite table value at t=" + t.str());
        }
    }
    std::sort(values.begin(), values.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i].first == values[i - 1].first) {
            throw DomainError("duplicate table entry at t=" + values[i].first.str());
        }
    }
    auto shared_scale = std::make_shared<const TimeScale>(scale);
    auto rows = std::make_shared<const std::vector<std::pair<Scalar, Scalar>>>(values);
    ScaleFn fn(
        [shared_scale, rows](const Scalar& t) {
            Scalar key = shared_scale->coerce(t);
            auto it = std::lower_bound(rows->begin(), rows->end(), key,
                                       [](const auto& row, const Scalar& k) { return row.first < k; });
            if (it == rows->end() || !(it->first == key)) {
                throw DomainError("tabulated function has no value at t=" + t.str());
            }
            return it->second;
        },
        Smoothness::c1rd);
    fn.kind_ = FnKind::tabulated;
    fn.table_scale_ = std::move(shared_scale);
    fn.rows_ = std::move(values);
    return fn;
}

Scalar ScaleFn::operator()(const Scalar& t) const
{
    return value_(t);
}

Scalar ScaleFn::left_limit(const Scalar& t) const
{
    return left_ ? left_(t) : value_(t);
}

ScaleFn ScaleFn::with_smoothness(Smoothness hint) const
{
    ScaleFn copy = *this;
    copy.hint_ = hint;
    return copy;
}

ScaleFn ScaleFn::with_domain(TimeScale domain) const
{
    auto d = std::make_shared<const TimeScale>(std::move(domain));
    ScaleFn copy = *this;
    copy.value_ = [d, inner = value_](const Scalar& t) {
        if (!d->contains(t)) {
            throw DomainError("t=" + t.str() + " is outside the function's domain " + d->str());
        }
        return inner(t);
    };
    if (left_) {
        copy.left_ = [d, inner = left_](const Scalar& t) {
            if (!d->contains(t)) {
                throw DomainError("t=" + t.str() + " is outside the function's domain " + d->str());
            }
            return inner(t);
        };
    }
    return copy;
}

namespace {

Smoothness weakest(Smoothness a, Smoothness b)
{
    return static_cast<int>(a) < static_cast<int>(b) ? a : b;
}

template <typename Op>
ScaleFn combine(const ScaleFn& f, const ScaleFn& g, Op op)
{
    return ScaleFn([f, g, op](const Scalar& t) { return op(f(t), g(t)); },
                   [f, g, op](const Scalar& t) { return op(f.left_limit(t), g.left_limit(t)); },
                   weakest(f.smoothness(), g.smoothness()));
}

} // namespace

ScaleFn operator+(const ScaleFn& f, const ScaleFn& g)
{
    return combine(f, g, [](const Scalar& x, const Scalar& y) { return x + y; });
}

ScaleFn operator-(const ScaleFn& f, const ScaleFn& g)
{
    return combine(f, g, [](const Scalar& x, const Scalar& y) { return x - y; });
}

ScaleFn operator*(const ScaleFn& f, const ScaleFn& g)
{
    return combine(f, g, [](const Scalar& x, const Scalar& y) { return x * y; });
}

ScaleFn operator*(const Scalar& c, const ScaleFn& f)
{
    return ScaleFn([c, f](const Scalar& t) { return c * f(t); },
                   [c, f](const Scalar& t) { return c * f.left_limit(t); }, f.smoothness());
}

ScaleFn compose_sigma(const TimeScale& scale, const ScaleFn& f)
{
    auto T = std::make_shared<const TimeScale>(scale);
    return ScaleFn([T, f](const Scalar& t) { return f(T->sigma(t)); },
                   [T, f](const Scalar& t) {
                       // Approached from the left only inside an interval piece,
                       // where sigma(s) = s.
                       Scalar x = T->coerce(t);
                       if (T->pieces()[T->locate(x)].lo < x) {
                           return f.left_limit(x);
                       }
                       return f(T->sigma(x));
                   },
                   f.smoothness() == Smoothness::none ? Smoothness::none : Smoothness::rd_continuous);
}

} // namespace tsvar
