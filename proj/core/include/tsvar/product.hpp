#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "tsvar/calculus.hpp"
#include "tsvar/polynomial.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"
#include "tsvar/variational.hpp"

namespace tsvar {

/// Rectangle [a1, b1] × [a2, b2] of a product scale.
struct Rect {
    Scalar a1;
    Scalar b1;
    Scalar a2;
    Scalar b2;
};

/// T1 × T2 with the jump operators of each axis.
class ProductScale {
public:
    ProductScale(TimeScale t1, TimeScale t2);

    const TimeScale& first() const noexcept { return t1_; }
    const TimeScale& second() const noexcept { return t2_; }
    /// axis is 1 or 2.
    const TimeScale& axis(int axis) const;

    Rect full_rect() const;
    /// Coerces the corners onto the axes and checks a_i < b_i.
    Rect check(const Rect& r) const;

private:
    TimeScale t1_;
    TimeScale t2_;
};

/// A real-valued function on (part of) T1 × T2. Integrands are assumed
/// continuous on the rectangle; slices report no separate left limits.
class SurfaceFn {
public:
    using Eval = std::function<Scalar(const Scalar&, const Scalar&)>;

    explicit SurfaceFn(Eval value, Smoothness hint = Smoothness::c1);

    static SurfaceFn constant(Scalar c);
    /// Polynomial over (t1, t2).
    static SurfaceFn polynomial(Polynomial p);
    /// values[i][j] = f(P1[i], P2[j]) with P_k the points of a discrete axis.
    static SurfaceFn table(const ProductScale& scale, std::vector<std::vector<Scalar>> values);

    Scalar operator()(const Scalar& t1, const Scalar& t2) const { return value_(t1, t2); }

    /// t1 ↦ f(t1, t2)
    ScaleFn along_first(const Scalar& t2) const;
    /// t2 ↦ f(t1, t2)
    ScaleFn along_second(const Scalar& t1) const;

    Smoothness smoothness() const noexcept { return hint_; }
    bool is_table() const noexcept { return table_scale_ != nullptr; }
    const ProductScale* table_scale() const noexcept { return table_scale_.get(); }
    const std::vector<std::vector<Scalar>>& table_values() const noexcept { return values_; }

private:
    Eval value_;
    Smoothness hint_;
    std::shared_ptr<const ProductScale> table_scale_;
    std::vector<std::vector<Scalar>> values_;
};

/// ∂f/Δ1 at (t1, t2), holding t2 fixed.
Scalar partial_delta1(const ProductScale& ps, const SurfaceFn& f, const Scalar& t1, const Scalar& t2,
                      const Tolerances& tol = {});
/// ∂f/Δ2 at (t1, t2), holding t1 fixed.
Scalar partial_delta2(const ProductScale& ps, const SurfaceFn& f, const Scalar& t1, const Scalar& t2,
                      const Tolerances& tol = {});

/// L(t1, t2, y0, y1, y2) with its partials in y0, y1, y2.
struct DoubleLagrangian {
    using Fn = std::function<Scalar(const Scalar& t1, const Scalar& t2, const Scalar& y0, const Scalar& y1,
                                    const Scalar& y2)>;

    Fn value;
    Fn d_y0;
    Fn d_y1;
    Fn d_y2;
    std::string description;

    /// Polynomial over (t1, t2, y0, y1, y2).
    static DoubleLagrangian from_polynomial(const Polynomial& p);
    /// "dirichlet" (y1^2 + y2^2) or "full" (y0^2 + y1^2 + y2^2).
    static DoubleLagrangian builtin(std::string_view name);
};

/// Minimize J(u) = ∫∫_R L(t1, t2, u(σ1,σ2), u^{Δ1}(t1,σ2), u^{Δ2}(σ1,t2)) Δt2 Δt1
/// with u prescribed on the boundary of R.
struct DoubleProblem {
    DoubleProblem(ProductScale scale, DoubleLagrangian lagrangian, Rect rect);
    DoubleProblem(ProductScale scale, DoubleLagrangian lagrangian);

    ProductScale scale;
    DoubleLagrangian lagrangian;
    Rect rect;
};

/// ∫_{a1}^{b1} ∫_{a2}^{b2} f Δt2 Δt1 (t2 innermost).
Scalar double_integral(const ProductScale& ps, const SurfaceFn& f, const Rect& r, const Tolerances& tol = {});
/// ∫_{a2}^{b2} ∫_{a1}^{b1} f Δt1 Δt2 (t1 innermost).
Scalar double_integral_swapped(const ProductScale& ps, const SurfaceFn& f, const Rect& r,
                               const Tolerances& tol = {});
/// |difference of the two iteration orders|.
Scalar fubini_residual(const ProductScale& ps, const SurfaceFn& f, const Rect& r, const Tolerances& tol = {});

/// ∫∫_R [L_{y0} η(σ1,σ2) + L_{y1} η^{Δ1}(t1,σ2) + L_{y2} η^{Δ2}(σ1,t2)] Δt2 Δt1 with the
/// partials evaluated at (t1, t2, ũ(σ1,σ2), ũ^{Δ1}(t1,σ2), ũ^{Δ2}(σ1,t2)).
/// Throws PreconditionError when η does not vanish on the boundary of R.
Scalar first_variation(const DoubleProblem& dp, const SurfaceFn& u, const SurfaceFn& eta,
                       const Tolerances& tol = {});

struct DoubleResidual {
    struct Sample {
        Scalar t1;
        Scalar t2;
        Scalar r;
    };
    /// Row-major by t1.
    std::vector<Sample> samples;
    Scalar max_abs;
};

/// r = L_{y0} - ∂/Δ1 L_{y1} - ∂/Δ2 L_{y2} at the points that carry weight in
/// ∫_{a2}^{ρ2(b2)} ∫_{a1}^{ρ1(b1)} (dense parts sampled on an 8-point grid).
DoubleResidual double_el_residual(const DoubleProblem& dp, const SurfaceFn& u, const Tolerances& tol = {});

/// Axis whose σ is not delta differentiable: it has left-dense
/// right-scattered points (right ends of intervals followed by a gap).
struct AxisAudit {
    int axis = 1;
    std::vector<Scalar> junctions;
    bool flagged() const { return !junctions.empty(); }
};

/// One entry per axis.
std::vector<AxisAudit> sigma_differentiability_audit(const ProductScale& ps);

struct ChainStep {
    std::string name;
    std::string description;
    Scalar lhs;
    Scalar rhs;
    Scalar residual;
};

struct ChainReport {
    std::vector<ChainStep> steps;
    /// true for the exact step-by-step check on discrete rational scales.
    bool exact = true;
    double tolerance = 0.0;
    bool all_zero() const;
};

/// Recomputes both sides of every step that turns the first variation into
/// ∫_{a2}^{ρ2(b2)} ∫_{a1}^{ρ1(b1)} [L_{y0} - L_{y1}^{Δ1} - L_{y2}^{Δ2}] η(σ1,σ2) Δt1 Δt2
/// and reports each residual. Discrete rational axes get every intermediate
/// identity checked exactly; otherwise only the two ends are compared within
/// 4 * tol.quad. Refuses (PreconditionError) when an axis has a left-dense
/// right-scattered point.
ChainReport derivation_chain_check(const DoubleProblem& dp, const SurfaceFn& u, const SurfaceFn& eta,
                                   const Tolerances& tol = {});

/// Discrete action J(u) for grid values u[i][j] on the rectangle.
double discrete_double_action(const DoubleProblem& dp, const std::vector<std::vector<double>>& u);

/// Minimizes the discrete action over the interior grid with the boundary
/// taken from `boundary`. Both axes must be discrete on the rectangle.
SurfaceFn brute_force_double_minimizer(const DoubleProblem& dp, const SurfaceFn& boundary,
                                       const MinimizerOptions& opts = {});

} // namespace tsvar
