#include "tsvar/product.hpp"

#include <algorithm>
#include <cmath>

#include "coordinate_descent.hpp"
#include "tsvar/errors.hpp"

namespace tsvar {

ProductScale::ProductScale(TimeScale t1, TimeScale t2) : t1_(std::move(t1)), t2_(std::move(t2)) {}

const TimeScale& ProductScale::axis(int axis) const
{
    if (axis == 1) {
        return t1_;
    }
    if (axis == 2) {
        return t2_;
    }
    throw DomainError("axis must be 1 or 2");
}

Rect ProductScale::full_rect() const
{
    return Rect{t1_.min(), t1_.max(), t2_.min(), t2_.max()};
}

Rect ProductScale::check(const Rect& r) const
{
    Rect out{t1_.coerce(r.a1), t1_.coerce(r.b1), t2_.coerce(r.a2), t2_.coerce(r.b2)};
    if (!(out.a1 < out.b1) || !(out.a2 < out.b2)) {
        throw DomainError("rectangle needs a1 < b1 and a2 < b2");
    }
    return out;
}

SurfaceFn::SurfaceFn(Eval value, Smoothness hint) : value_(std::move(value)), hint_(hint)
{
    if (!value_) {
        throw PreconditionError("SurfaceFn needs a callable");
    }
}

SurfaceFn SurfaceFn::constant(Scalar c)
{
    return SurfaceFn([c](const Scalar&, const Scalar&) { return c; });
}

SurfaceFn SurfaceFn::polynomial(Polynomial p)
{
    if (p.arity() != 2) {
        throw DomainError("a SurfaceFn polynomial must have exactly two variables");
    }
    return SurfaceFn([p = std::move(p)](const Scalar& t1, const Scalar& t2) { return p({t1, t2}); });
}

SurfaceFn SurfaceFn::table(const ProductScale& scale, std::vector<std::vector<Scalar>> values)
{
    std::vector<Scalar> p1 = scale.first().points();
    std::vector<Scalar> p2 = scale.second().points();
    if (values.size() != p1.size()) {
        throw DomainError("2-D table has " + std::to_string(values.size()) + " rows, scale1 has "
                          + std::to_string(p1.size()) + " points");
    }
    for (const auto& row : values) {
        if (row.size() != p2.size()) {
            throw DomainError("2-D table row has " + std::to_string(row.size()) + " entries, scale2 has "
                              + std::to_string(p2.size()) + " points");
        }
        for (const auto& v : row) {
            if (!v.is_finite()) {
                throw DomainError("non-finite 2-D table value");
            }
        }
    }
    auto shared = std::make_shared<const ProductScale>(scale);
    auto data = std::make_shared<const std::vector<std::vector<Scalar>>>(values);
    auto axes = std::make_shared<const std::pair<std::vector<Scalar>, std::vector<Scalar>>>(p1, p2);
    SurfaceFn fn(
        [shared, data, axes](const Scalar& t1, const Scalar& t2) {
            auto find = [](const std::vector<Scalar>& pts, const Scalar& x, const TimeScale& T) {
                Scalar key = T.coerce(x);
                auto it = std::lower_bound(pts.begin(), pts.end(), key);
                return static_cast<std::size_t>(it - pts.begin());
            };
            std::size_t i = find(axes->first, t1, shared->first());
            std::size_t j = find(axes->second, t2, shared->second());
            return (*data)[i][j];
        },
        Smoothness::c1rd);
    fn.table_scale_ = std::move(shared);
    fn.values_ = std::move(values);
    return fn;
}

ScaleFn SurfaceFn::along_first(const Scalar& t2) const
{
    return ScaleFn([f = value_, t2](const Scalar& t1) { return f(t1, t2); }, hint_);
}

ScaleFn SurfaceFn::along_second(const Scalar& t1) const
{
    return ScaleFn([f = value_, t1](const Scalar& t2) { return f(t1, t2); }, hint_);
}

Scalar partial_delta1(const ProductScale& ps, const SurfaceFn& f, const Scalar& t1, const Scalar& t2,
                      const Tolerances& tol)
{
    return delta_deriv(ps.first(), f.along_first(t2), t1, tol).value;
}

Scalar partial_delta2(const ProductScale& ps, const SurfaceFn& f, const Scalar& t1, const Scalar& t2,
                      const Tolerances& tol)
{
    return delta_deriv(ps.second(), f.along_second(t1), t2, tol).value;
}

DoubleLagrangian DoubleLagrangian::from_polynomial(const Polynomial& p)
{
    if (p.variables() != std::vector<std::string>{"t1", "t2", "y0", "y1", "y2"}) {
        throw DomainError("a double Lagrangian polynomial must be over (t1, t2, y0, y1, y2)");
    }
    auto wrap = [](Polynomial q) -> Fn {
        return [q = std::move(q)](const Scalar& t1, const Scalar& t2, const Scalar& y0, const Scalar& y1,
                                  const Scalar& y2) { return q({t1, t2, y0, y1, y2}); };
    };
    DoubleLagrangian L;
    L.value = wrap(p);
    L.d_y0 = wrap(p.derivative("y0"));
    L.d_y1 = wrap(p.derivative("y1"));
    L.d_y2 = wrap(p.derivative("y2"));
    L.description = p.str();
    return L;
}

DoubleLagrangian DoubleLagrangian::builtin(std::string_view name)
{
    const std::vector<std::string> vars{"t1", "t2", "y0", "y1", "y2"};
    if (name == "dirichlet") {
        return from_polynomial(Polynomial::parse("y1^2 + y2^2", vars));
    }
    if (name == "full") {
        return from_polynomial(Polynomial::parse("y0^2 + y1^2 + y2^2", vars));
    }
    throw ParseError("unknown built-in double Lagrangian '" + std::string(name) + "' (expected dirichlet, full)");
}

DoubleProblem::DoubleProblem(ProductScale scale_, DoubleLagrangian lagrangian_, Rect rect_)
    : scale(std::move(scale_)), lagrangian(std::move(lagrangian_)), rect(scale.check(rect_))
{
    if (!lagrangian.value || !lagrangian.d_y0 || !lagrangian.d_y1 || !lagrangian.d_y2) {
        throw PreconditionError("double Lagrangian is missing its value or partials");
    }
}

DoubleProblem::DoubleProblem(ProductScale scale_, DoubleLagrangian lagrangian_)
    : DoubleProblem(scale_, std::move(lagrangian_), scale_.full_rect())
{
}

namespace {

using Fn1 = std::function<Scalar(const Scalar&)>;
using Fn2 = std::function<Scalar(const Scalar&, const Scalar&)>;

Scalar integrate(const TimeScale& T, const Fn1& g, const Scalar& a, const Scalar& b, const Tolerances& tol)
{
    return delta_integral(T, ScaleFn(g, Smoothness::rd_continuous), a, b, tol);
}

// Partial derivatives and the Lagrangian partials along ũ, all on one
// product scale.
class Field {
public:
    Field(const DoubleProblem& dp, SurfaceFn u, const Tolerances& tol) : dp_(dp), u_(std::move(u)), tol_(tol) {}

    const TimeScale& T1() const { return dp_.scale.first(); }
    const TimeScale& T2() const { return dp_.scale.second(); }
    Scalar s1(const Scalar& t) const { return T1().sigma(t); }
    Scalar s2(const Scalar& t) const { return T2().sigma(t); }

    Scalar d1(const Fn2& g, const Scalar& t1, const Scalar& t2) const
    {
        return delta_deriv(T1(), ScaleFn([&g, t2](const Scalar& s) { return g(s, t2); }), t1, tol_).value;
    }
    Scalar d2(const Fn2& g, const Scalar& t1, const Scalar& t2) const
    {
        return delta_deriv(T2(), ScaleFn([&g, t1](const Scalar& s) { return g(t1, s); }), t2, tol_).value;
    }

    struct Args {
        Scalar y0;
        Scalar y1;
        Scalar y2;
    };

    // (t1, t2, ũ(σ1,σ2), ũ^{Δ1}(t1,σ2), ũ^{Δ2}(σ1,t2))
    Args args(const Scalar& t1, const Scalar& t2) const
    {
        Fn2 u = [this](const Scalar& x, const Scalar& y) { return u_(x, y); };
        Scalar st1 = s1(t1);
        Scalar st2 = s2(t2);
        return Args{u_(st1, st2), d1(u, t1, st2), d2(u, st1, t2)};
    }

    Scalar Ly0(const Scalar& t1, const Scalar& t2) const
    {
        Args a = args(t1, t2);
        return dp_.lagrangian.d_y0(t1, t2, a.y0, a.y1, a.y2);
    }
    Scalar Ly1(const Scalar& t1, const Scalar& t2) const
    {
        Args a = args(t1, t2);
        return dp_.lagrangian.d_y1(t1, t2, a.y0, a.y1, a.y2);
    }
    Scalar Ly2(const Scalar& t1, const Scalar& t2) const
    {
        Args a = args(t1, t2);
        return dp_.lagrangian.d_y2(t1, t2, a.y0, a.y1, a.y2);
    }

    // L_{y0} - L_{y1}^{Δ1} - L_{y2}^{Δ2}
    Scalar el(const Scalar& t1, const Scalar& t2) const
    {
        Fn2 ly1 = [this](const Scalar& x, const Scalar& y) { return Ly1(x, y); };
        Fn2 ly2 = [this](const Scalar& x, const Scalar& y) { return Ly2(x, y); };
        return Ly0(t1, t2) - d1(ly1, t1, t2) - d2(ly2, t1, t2);
    }

    // ∫_{a1}^{b1} ∫_{a2}^{b2} g Δt2 Δt1
    Scalar iint_t2_inner(const Fn2& g, const Scalar& a1, const Scalar& b1, const Scalar& a2,
                         const Scalar& b2) const
    {
        return integrate(
            T1(), [&](const Scalar& t1) { return integrate(T2(), [&](const Scalar& t2) { return g(t1, t2); }, a2, b2, tol_); },
            a1, b1, tol_);
    }
    // ∫_{a2}^{b2} ∫_{a1}^{b1} g Δt1 Δt2
    Scalar iint_t1_inner(const Fn2& g, const Scalar& a1, const Scalar& b1, const Scalar& a2,
                         const Scalar& b2) const
    {
        return integrate(
            T2(), [&](const Scalar& t2) { return integrate(T1(), [&](const Scalar& t1) { return g(t1, t2); }, a1, b1, tol_); },
            a2, b2, tol_);
    }

    Scalar int1(const Fn1& g, const Scalar& a, const Scalar& b) const { return integrate(T1(), g, a, b, tol_); }
    Scalar int2(const Fn1& g, const Scalar& a, const Scalar& b) const { return integrate(T2(), g, a, b, tol_); }

    const Tolerances& tol() const { return tol_; }

private:
    const DoubleProblem& dp_;
    SurfaceFn u_;
    Tolerances tol_;
};

std::vector<Scalar> boundary_samples(const TimeScale& T, const Scalar& a, const Scalar& b)
{
    return T.restrict(a, b).grid(8);
}

void require_vanishing_on_boundary(const DoubleProblem& dp, const SurfaceFn& eta)
{
    const Rect& r = dp.rect;
    auto fail = [](const Scalar& x, const Scalar& y, const Scalar& v) {
        throw PreconditionError("variation η must vanish on the boundary of R; η(" + x.str() + "," + y.str()
                                + ") = " + v.str());
    };
    for (const auto& t2 : boundary_samples(dp.scale.second(), r.a2, r.b2)) {
        for (const auto& t1 : {r.a1, r.b1}) {
            if (Scalar v = eta(t1, t2); !v.is_zero()) {
                fail(t1, t2, v);
            }
        }
    }
    for (const auto& t1 : boundary_samples(dp.scale.first(), r.a1, r.b1)) {
        for (const auto& t2 : {r.a2, r.b2}) {
            if (Scalar v = eta(t1, t2); !v.is_zero()) {
                fail(t1, t2, v);
            }
        }
    }
}

// Points that carry weight in ∫_a^{ρ(b)}: dense parts sampled, ρ(b) itself
// dropped when it is the right-scattered predecessor of b.
std::vector<Scalar> weighted_samples(const TimeScale& T, const Scalar& a, const Scalar& b)
{
    Scalar upper = T.rho(b);
    std::vector<Scalar> pts = T.restrict(a, upper).grid(8);
    if (upper < b) {
        pts.pop_back();
    }
    return pts;
}

Fn2 first_variation_integrand(const Field& f, const SurfaceFn& eta)
{
    return [&f, &eta](const Scalar& t1, const Scalar& t2) {
        Fn2 e = [&eta](const Scalar& x, const Scalar& y) { return eta(x, y); };
        Scalar st1 = f.s1(t1);
        Scalar st2 = f.s2(t2);
        return f.Ly0(t1, t2) * eta(st1, st2) + f.Ly1(t1, t2) * f.d1(e, t1, st2) + f.Ly2(t1, t2) * f.d2(e, st1, t2);
    };
}

} // namespace

Scalar double_integral(const ProductScale& ps, const SurfaceFn& f, const Rect& r, const Tolerances& tol)
{
    Rect c = ps.check(r);
    return integrate(
        ps.first(),
        [&](const Scalar& t1) { return delta_integral(ps.second(), f.along_second(t1), c.a2, c.b2, tol); }, c.a1,
        c.b1, tol);
}

Scalar double_integral_swapped(const ProductScale& ps, const SurfaceFn& f, const Rect& r, const Tolerances& tol)
{
    Rect c = ps.check(r);
    return integrate(
        ps.second(),
        [&](const Scalar& t2) { return delta_integral(ps.first(), f.along_first(t2), c.a1, c.b1, tol); }, c.a2,
        c.b2, tol);
}

Scalar fubini_residual(const ProductScale& ps, const SurfaceFn& f, const Rect& r, const Tolerances& tol)
{
    return abs(double_integral(ps, f, r, tol) - double_integral_swapped(ps, f, r, tol));
}

Scalar first_variation(const DoubleProblem& dp, const SurfaceFn& u, const SurfaceFn& eta, const Tolerances& tol)
{
    require_vanishing_on_boundary(dp, eta);
    Field field(dp, u, tol);
    const Rect& r = dp.rect;
    return field.iint_t2_inner(first_variation_integrand(field, eta), r.a1, r.b1, r.a2, r.b2);
}

DoubleResidual double_el_residual(const DoubleProblem& dp, const SurfaceFn& u, const Tolerances& tol)
{
    Field field(dp, u, tol);
    const Rect& r = dp.rect;
    DoubleResidual out;
    out.max_abs = Scalar(0).in_mode(dp.scale.first().mode());
    for (const auto& t1 : weighted_samples(dp.scale.first(), r.a1, r.b1)) {
        for (const auto& t2 : weighted_samples(dp.scale.second(), r.a2, r.b2)) {
            Scalar value = field.el(t1, t2);
            out.max_abs = max(out.max_abs, abs(value));
            out.samples.push_back({t1, t2, std::move(value)});
        }
    }
    return out;
}

std::vector<AxisAudit> sigma_differentiability_audit(const ProductScale& ps)
{
    std::vector<AxisAudit> out;
    for (int axis : {1, 2}) {
        const TimeScale& T = ps.axis(axis);
        AxisAudit audit;
        audit.axis = axis;
        const auto& pieces = T.pieces();
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            if (!pieces[i].is_point()) {
                audit.junctions.push_back(pieces[i].hi);
            }
        }
        out.push_back(std::move(audit));
    }
    return out;
}

bool ChainReport::all_zero() const
{
    return std::all_of(steps.begin(), steps.end(), [this](const ChainStep& s) {
        return exact ? s.residual.is_zero() : s.residual.to_double() <= tolerance;
    });
}

ChainReport derivation_chain_check(const DoubleProblem& dp, const SurfaceFn& u, const SurfaceFn& eta,
                                   const Tolerances& tol)
{
    for (const auto& audit : sigma_differentiability_audit(dp.scale)) {
        if (audit.flagged()) {
            std::string pts;
            for (const auto& t : audit.junctions) {
                pts += (pts.empty() ? "" : ", ") + t.str();
            }
            throw PreconditionError("axis " + std::to_string(audit.axis) + " has left-dense right-scattered point(s) {"
                                    + pts + "}; σ" + std::to_string(audit.axis)
                                    + " is then not delta differentiable, and a σ-differentiable axis cannot have "
                                      "left-dense right-scattered points");
        }
    }
    require_vanishing_on_boundary(dp, eta);

    Field F(dp, u, tol);
    const Rect& r = dp.rect;
    const TimeScale& T1 = F.T1();
    const TimeScale& T2 = F.T2();
    const Scalar r1 = T1.rho(r.b1);
    const Scalar r2 = T2.rho(r.b2);
    const Fn2 integrand = first_variation_integrand(F, eta);
    const Fn2 e = [&eta](const Scalar& x, const Scalar& y) { return eta(x, y); };

    ChainReport report;
    auto add = [&report](std::string name, std::string description, Scalar lhs, Scalar rhs) {
        Scalar residual = abs(lhs - rhs);
        report.steps.push_back({std::move(name), std::move(description), std::move(lhs), std::move(rhs),
                                std::move(residual)});
    };

    const Scalar I0 = F.iint_t2_inner(integrand, r.a1, r.b1, r.a2, r.b2);
    const Scalar A_el = F.iint_t1_inner(
        [&](const Scalar& t1, const Scalar& t2) { return F.el(t1, t2) * eta(F.s1(t1), F.s2(t2)); }, r.a1, r1, r.a2, r2);

    const bool discrete_exact = T1.is_discrete_on(r.a1, r.b1) && T2.is_discrete_on(r.a2, r.b2)
                                && T1.mode() == NumericMode::rational && T2.mode() == NumericMode::rational;
    if (!discrete_exact) {
        report.exact = false;
        report.tolerance = 4.0 * tol.quad;
        add("combined", "first variation equals the truncated Euler-Lagrange double integral", I0, A_el);
        return report;
    }

    // Splitting [a2,b2) at ρ2(b2), then [a1,b1) at ρ1(b1) after swapping order.
    const Scalar inner_split = F.iint_t2_inner(integrand, r.a1, r.b1, r.a2, r2);
    const Scalar C = F.iint_t2_inner(integrand, r.a1, r.b1, r2, r.b2);
    add("split-t2", "∫∫_R F = ∫_{a1}^{b1}∫_{a2}^{ρ2(b2)} F + ∫_{a1}^{b1}∫_{ρ2(b2)}^{b2} F", I0, inner_split + C);

    const Scalar A = F.iint_t1_inner(integrand, r.a1, r1, r.a2, r2);
    const Scalar B = F.iint_t1_inner(integrand, r1, r.b1, r.a2, r2);
    add("interchange-split-t1", "swap the order of integration and split [a1,b1) at ρ1(b1)", inner_split, A + B);

    // Interior block.
    const Fn2 P1 = [&](const Scalar& t1, const Scalar& t2) { return F.Ly1(t1, t2) * eta(t1, F.s2(t2)); };
    const Fn2 P2 = [&](const Scalar& t1, const Scalar& t2) { return F.Ly2(t1, t2) * eta(F.s1(t1), t2); };
    const Scalar A_div = F.iint_t1_inner(
        [&](const Scalar& t1, const Scalar& t2) { return F.d1(P1, t1, t2) + F.d2(P2, t1, t2); }, r.a1, r1, r.a2, r2);
    add("product-rule", "L_{y1}η^{Δ1}(t1,σ2) + L_{y2}η^{Δ2}(σ1,t2) = [L_{y1}η(t1,σ2)]^{Δ1} + [L_{y2}η(σ1,t2)]^{Δ2} "
                        "- (L_{y1}^{Δ1} + L_{y2}^{Δ2}) η(σ1,σ2) on the interior block",
        A, A_el + A_div);

    const Scalar A_ftc = F.int2([&](const Scalar& t2) { return P1(r1, t2) - P1(r.a1, t2); }, r.a2, r2)
                         + F.int1([&](const Scalar& t1) { return P2(t1, r2) - P2(t1, r.a2); }, r.a1, r1);
    add("fundamental-theorem", "integrate the two divergence terms along their own axis", A_div, A_ftc);

    const Scalar BT1 = F.int2([&](const Scalar& t2) { return F.Ly1(r1, t2) * eta(r1, F.s2(t2)); }, r.a2, r2);
    const Scalar BT2 = F.int1([&](const Scalar& t1) { return F.Ly2(t1, r2) * eta(F.s1(t1), r2); }, r.a1, r1);
    add("lower-edges-vanish", "η(a1,·) = η(·,a2) = 0 leaves only the upper boundary terms", A_ftc, BT1 + BT2);

    // Right strip t1 = ρ1(b1).
    const Scalar mu1 = T1.mu(r1);
    const Scalar s1r1 = F.s1(r1);
    const Scalar B_strip = F.int2(
        [&](const Scalar& t2) {
            return mu1 * (F.Ly1(r1, t2) * F.d1(e, r1, F.s2(t2)) + F.Ly2(r1, t2) * F.d2(e, s1r1, t2));
        },
        r.a2, r2);
    add("right-strip", "∫_{ρ1(b1)}^{b1} collapses to μ1(ρ1(b1)) times the integrand at ρ1(b1)", B, B_strip);

    Scalar y0_term = Scalar(0);
    Scalar collapse = Scalar(0);
    {
        TimeScale R2 = T2.restrict(r.a2, r2);
        for (const auto& t2 : R2.points()) {
            if (!(t2 < r2)) {
                continue;
            }
            Scalar st2 = F.s2(t2);
            y0_term += abs(F.Ly0(r1, t2) * eta(s1r1, st2));
            collapse += abs(mu1 * F.d1(e, r1, st2) + eta(r1, st2));
        }
    }
    add("right-strip-y0-term", "L_{y0}(ρ1(b1),·) η(b1,σ2(t2)) = 0 pointwise (summed absolute values)", y0_term,
        Scalar(0));
    add("boundary-collapse", "μ1(ρ1(b1)) η^{Δ1}(ρ1(b1),σ2(t2)) = -η(ρ1(b1),σ2(t2)) pointwise (summed |lhs-rhs|)",
        collapse, Scalar(0));

    const Scalar B_collapsed = F.int2(
        [&](const Scalar& t2) {
            return -F.Ly1(r1, t2) * eta(r1, F.s2(t2)) + mu1 * F.Ly2(r1, t2) * F.d2(e, s1r1, t2);
        },
        r.a2, r2);
    add("right-strip-collapsed", "substitute the boundary collapse into the right strip", B_strip, B_collapsed);

    const Scalar edge = F.int2([&](const Scalar& t2) { return F.Ly2(r1, t2) * F.d2(e, s1r1, t2); }, r.a2, r2);
    const Fn2 ly2 = [&](const Scalar& x, const Scalar& y) { return F.Ly2(x, y); };
    const Scalar edge_parts = (F.Ly2(r1, r2) * eta(s1r1, r2) - F.Ly2(r1, r.a2) * eta(s1r1, r.a2))
                              - F.int2([&](const Scalar& t2) { return F.d2(ly2, r1, t2) * eta(s1r1, F.s2(t2)); },
                                       r.a2, r2);
    add("edge-term-by-parts", "∫ L_{y2}(ρ1(b1),·) η^{Δ2}(b1,t2) Δt2 integrated by parts", edge, edge_parts);
    add("edge-term-vanishes", "∫ L_{y2}(ρ1(b1),·) η^{Δ2}(b1,t2) Δt2 = 0 since η(b1,·) = 0", edge, Scalar(0));

    const Scalar B_reduced = F.int2([&](const Scalar& t2) { return -F.Ly1(r1, t2) * eta(r1, F.s2(t2)); }, r.a2, r2);
    add("right-strip-reduced", "right strip equals -∫ L_{y1}(ρ1(b1),·) η(ρ1(b1),σ2) Δt2", B_collapsed, B_reduced);

    // Top strip t2 = ρ2(b2).
    const Scalar mu2 = T2.mu(r2);
    const Scalar s2r2 = F.s2(r2);
    const Fn1 top = [&](const Scalar& t1) {
        return mu2 * (F.Ly1(t1, r2) * F.d1(e, t1, s2r2) + F.Ly2(t1, r2) * F.d2(e, F.s1(t1), r2));
    };
    const Scalar C_strip = F.int1(top, r.a1, r.b1);
    add("top-strip", "∫_{ρ2(b2)}^{b2} collapses to μ2(ρ2(b2)) times the integrand; the L_{y0} term has η(σ1,b2) = 0",
        C, C_strip);

    const Scalar corner = mu1 * mu2
                          * (F.Ly1(r1, r2) * F.d1(e, r1, s2r2) + F.Ly2(r1, r2) * F.d2(e, s1r1, r2));
    const Scalar C_split = F.int1(top, r.a1, r1) + corner;
    add("top-strip-split", "split the top strip at ρ1(b1), leaving the corner cell", C_strip, C_split);

    const Scalar C_reduced = F.int1([&](const Scalar& t1) { return -F.Ly2(t1, r2) * eta(F.s1(t1), r2); }, r.a1, r1);
    add("top-strip-reduced", "top strip equals -∫ L_{y2}(·,ρ2(b2)) η(σ1,ρ2(b2)) Δt1", C_split, C_reduced);

    add("right-cancels", "upper boundary term in t1 cancels the right strip", BT1 + B_reduced, Scalar(0));
    add("top-cancels", "upper boundary term in t2 cancels the top strip", BT2 + C_reduced, Scalar(0));
    add("combined", "first variation equals the truncated Euler-Lagrange double integral", I0, A_el);
    return report;
}

double discrete_double_action(const DoubleProblem& dp, const std::vector<std::vector<double>>& u)
{
    const Rect& r = dp.rect;
    std::vector<Scalar> P1 = dp.scale.first().restrict(r.a1, r.b1).points();
    std::vector<Scalar> P2 = dp.scale.second().restrict(r.a2, r.b2).points();
    if (u.size() != P1.size()) {
        throw DomainError("discrete_double_action: grid does not match the rectangle");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < P1.size(); ++i) {
        double m1 = (P1[i + 1] - P1[i]).to_double();
        for (std::size_t j = 0; j + 1 < P2.size(); ++j) {
            double m2 = (P2[j + 1] - P2[j]).to_double();
            double y0 = u[i + 1][j + 1];
            double y1 = (u[i + 1][j + 1] - u[i][j + 1]) / m1;
            double y2 = (u[i + 1][j + 1] - u[i + 1][j]) / m2;
            total += m1 * m2 * dp.lagrangian.value(P1[i], P2[j], Scalar(y0), Scalar(y1), Scalar(y2)).to_double();
        }
    }
    return total;
}

SurfaceFn brute_force_double_minimizer(const DoubleProblem& dp, const SurfaceFn& boundary,
                                       const MinimizerOptions& opts)
{
    const Rect& r = dp.rect;
    if (!dp.scale.first().is_discrete_on(r.a1, r.b1) || !dp.scale.second().is_discrete_on(r.a2, r.b2)) {
        throw UnsupportedError("brute_force_double_minimizer needs both axes discrete on the rectangle");
    }
    TimeScale R1 = dp.scale.first().restrict(r.a1, r.b1);
    TimeScale R2 = dp.scale.second().restrict(r.a2, r.b2);
    std::vector<Scalar> P1 = R1.points();
    std::vector<Scalar> P2 = R2.points();
    if (P1.size() > opts.max_points || P2.size() > opts.max_points) {
        throw PreconditionError("brute_force_double_minimizer handles at most " + std::to_string(opts.max_points)
                                + " points per axis");
    }
    const std::size_t n1 = P1.size();
    const std::size_t n2 = P2.size();
    std::vector<double> m1(n1, 0.0);
    std::vector<double> m2(n2, 0.0);
    for (std::size_t i = 0; i + 1 < n1; ++i) {
        m1[i] = (P1[i + 1] - P1[i]).to_double();
    }
    for (std::size_t j = 0; j + 1 < n2; ++j) {
        m2[j] = (P2[j + 1] - P2[j]).to_double();
    }

    // Flattened row-major grid; interior starts at the boundary mean.
    std::vector<double> x(n1 * n2, 0.0);
    double boundary_sum = 0.0;
    std::size_t boundary_count = 0;
    auto on_boundary = [&](std::size_t i, std::size_t j) { return i == 0 || j == 0 || i + 1 == n1 || j + 1 == n2; };
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            if (on_boundary(i, j)) {
                x[i * n2 + j] = boundary(P1[i], P2[j]).to_double();
                boundary_sum += x[i * n2 + j];
                ++boundary_count;
            }
        }
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            if (!on_boundary(i, j)) {
                x[i * n2 + j] = boundary_sum / static_cast<double>(boundary_count);
                free.push_back(i * n2 + j);
            }
        }
    }

    auto cell = [&](const std::vector<double>& g, std::size_t i, std::size_t j) {
        double y0 = g[(i + 1) * n2 + j + 1];
        double y1 = (y0 - g[i * n2 + j + 1]) / m1[i];
        double y2 = (y0 - g[(i + 1) * n2 + j]) / m2[j];
        return m1[i] * m2[j] * dp.lagrangian.value(P1[i], P2[j], Scalar(y0), Scalar(y1), Scalar(y2)).to_double();
    };
    // u(p,q) enters the cells (p-1,q-1), (p,q-1) and (p-1,q).
    auto local = [&](const std::vector<double>& g, std::size_t k) {
        std::size_t p = k / n2;
        std::size_t q = k % n2;
        return cell(g, p - 1, q - 1) + cell(g, p, q - 1) + cell(g, p - 1, q);
    };
    detail::coordinate_descent(x, free, local, opts.stationarity, opts.max_sweeps);

    std::vector<std::vector<Scalar>> values(n1, std::vector<Scalar>(n2));
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            values[i][j] = on_boundary(i, j) ? boundary(P1[i], P2[j]) : Scalar(x[i * n2 + j]);
        }
    }
    return SurfaceFn::table(ProductScale(R1, R2), std::move(values));
}

} // namespace tsvar
