#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tsvar/calculus.hpp"
#include "tsvar/polynomial.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"

namespace tsvar {

/// L(t, y, v) with its partials in y and v.
struct Lagrangian {
    using Fn = std::function<Scalar(const Scalar& t, const Scalar& y, const Scalar& v)>;

    Fn value;
    Fn d_y;
    Fn d_v;
    /// "analytic" or "finite-difference".
    std::string partials = "analytic";
    std::string description;

    /// Polynomial over the variables (t, y, v); partials are exact.
    static Lagrangian from_polynomial(const Polynomial& p);
    /// Arbitrary closure; partials by central differences with step
    /// 1e-6 * max(1, |arg|).
    static Lagrangian from_closure(Fn L, std::string description);
    /// "v2" (v^2), "v2+y2" (v^2 + y^2) or "harmonic" (v^2 - y^2).
    static Lagrangian builtin(std::string_view name);
};

/// Fixed-endpoint problem: minimize ∫_a^b L(t, y^σ(t), y^Δ(t)) Δt with
/// y(a) = ya and y(b) = yb.
struct VariationalProblem {
    VariationalProblem(TimeScale scale, Lagrangian lagrangian, Scalar a, Scalar b, Scalar ya, Scalar yb);

    TimeScale scale;
    Lagrangian lagrangian;
    Scalar a;
    Scalar b;
    Scalar ya;
    Scalar yb;
};

struct AuditFinding {
    std::string code;
    std::string message;
};

/// Residual of the integral-form Euler-Lagrange equation
///   L_v(t) = ∫_a^t L_y(τ) Δτ + c,   t ∈ [a, ρ(b)],
/// where L_y, L_v are evaluated along (t, ŷ^σ(t), ŷ^Δ(t)).
struct ELReport {
    /// (t, r(t)) sorted by t; never contains a left-scattered b.
    std::vector<std::pair<Scalar, Scalar>> residual;
    /// Least-squares constant.
    Scalar c_hat;
    Scalar max_abs_residual;
    std::string partials;
    std::vector<AuditFinding> findings;
};

ELReport el_residual(const VariationalProblem& p, const ScaleFn& y_hat, const Tolerances& tol = {});

/// Always one finding: "left-scattered-endpoint" when L_v(b) would need data
/// beyond [a, ρ(b)], "no-gap" otherwise.
std::vector<AuditFinding> definedness_audit(const VariationalProblem& p);

enum class KernelVariant { delta, nabla };
std::string_view to_string(KernelVariant v);
KernelVariant parse_kernel_variant(std::string_view text);

/// Which values of M are forced to zero by orthogonality against every
/// variation η with η(a) = η(b) = 0.
///
/// delta: Σ_{t∈[a,b)} μ(t) M(t) η(σ(t)) = 0; claimed domain [a,b]^{k²}.
/// nabla: Σ_{t∈(a,b]} ν(t) M(t) η(t) = 0;    claimed domain [a,b]
///        (a plays the role of ρ(a) in the nabla formulation).
struct KernelReport {
    KernelVariant variant = KernelVariant::delta;
    std::vector<Scalar> domain;
    std::vector<Scalar> constrained;
    std::vector<Scalar> unconstrained;
    std::vector<Scalar> claimed_domain;
    /// Interior points where η is free.
    std::vector<Scalar> free_variations;
    std::size_t rank = 0;
    /// claimed_domain ⊆ constrained.
    bool claim_holds = false;
};

KernelReport fl_kernel(const TimeScale& T, KernelVariant variant, const Scalar& a, const Scalar& b);

struct MinimizerOptions {
    /// Stop once a sweep moves no coordinate by more than this (relative to
    /// max(1, |y|)).
    double stationarity = 1e-12;
    std::size_t max_sweeps = 200000;
    std::size_t max_points = 12;
};

/// Discrete action Σ_{t∈[a,b)} μ(t) L(t, y(σ(t)), y^Δ(t)).
double discrete_action(const VariationalProblem& p, const std::vector<double>& y);

/// Minimizes the discrete action over the interior values by coordinate
/// descent with parabolic line steps. Returns a table on [a, b] ∩ T.
ScaleFn brute_force_minimizer(const VariationalProblem& p, const MinimizerOptions& opts = {});

} // namespace tsvar
