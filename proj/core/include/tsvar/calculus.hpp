#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"

namespace tsvar {

/// Numerical knobs for the dense parts of a scale.
struct Tolerances {
    /// Absolute tolerance of adaptive Simpson per interval piece.
    double quad = 1e-10;
    int quad_max_depth = 40;
    /// Convergence tolerance of the Richardson-extrapolated derivative
    /// (relative to max(1, |value|)).
    double deriv = 1e-10;
    int deriv_max_halvings = 20;

    /// Defaults, with quad and deriv replaced by $TSVAR_TOL when it is set.
    static Tolerances from_env();
};

enum class DerivMethod { exact_quotient, numeric_limit };
std::string_view to_string(DerivMethod m);

struct DerivResult {
    Scalar value;
    DerivMethod method = DerivMethod::exact_quotient;
    /// Zero for exact quotients.
    double est_error = 0.0;
};

/// Delta derivative f^Δ(t).
///
/// At a right-scattered t this is the quotient (f(σ(t)) - f(t)) / μ(t),
/// exact when the inputs are. At a right-dense t it is the limit of
/// difference quotients taken along the scale (central where both sides are
/// available, one-sided otherwise) with Richardson extrapolation.
///
/// Throws UndefinedDerivative when t is not in T^k (a left-scattered maximum)
/// and ConvergenceError when the numeric limit does not settle.
DerivResult delta_deriv(const TimeScale& T, const ScaleFn& f, const Scalar& t,
                        const Tolerances& tol = {});

/// lim_{s→t-} f^Δ(s) along the interval piece ending at t. Requires t to be
/// the right end (or an interior point) of a non-degenerate interval.
DerivResult delta_deriv_left_limit(const TimeScale& T, const ScaleFn& f, const Scalar& t,
                                   const Tolerances& tol = {});

/// t ↦ f^Δ(t) as a function, with the derivative's own left limit at dense
/// junctions.
ScaleFn delta_fn(const TimeScale& T, const ScaleFn& f, const Tolerances& tol = {});

/// |f(σ(t)) - f(t) - μ(t) f^Δ(t)|.
Scalar simple_useful_check(const TimeScale& T, const ScaleFn& f, const Scalar& t,
                           const Tolerances& tol = {});

struct ProductRuleResidual {
    /// |(fg)^Δ - (f^Δ g^σ + f g^Δ)|
    Scalar sigma_on_g;
    /// |(fg)^Δ - (f^Δ g + f^σ g^Δ)|
    Scalar sigma_on_f;
};

ProductRuleResidual product_rule_residual(const TimeScale& T, const ScaleFn& f, const ScaleFn& g,
                                          const Scalar& t, const Tolerances& tol = {});

/// ∫_a^b f(t) Δt: adaptive Simpson over every interval part of [a, b] ∩ T plus
/// μ(t) f(t) for every right-scattered t in [a, b). Exact on discrete
/// rational scales. Throws DomainError when a > b (no silent sign flip).
Scalar delta_integral(const TimeScale& T, const ScaleFn& f, const Scalar& a, const Scalar& b,
                      const Tolerances& tol = {});

/// ∫_a^b f(t) ∇t = Σ_{t ∈ (a,b] ∩ T} ν(t) f(t) with ν(t) = t - ρ(t).
/// Throws UnsupportedError when [a, b] ∩ T contains an interval.
Scalar nabla_integral_discrete(const TimeScale& T, const ScaleFn& f, const Scalar& a,
                               const Scalar& b);

/// Which function carries the σ in the integration-by-parts formula.
enum class IbpForm {
    /// ∫ f^σ g^Δ = [fg] - ∫ f^Δ g
    sigma_on_f = 1,
    /// ∫ f g^Δ = [fg] - ∫ f^Δ g^σ
    sigma_on_g = 2,
};

/// |lhs - rhs| of an integration-by-parts formula on [a, b]. f and g must be
/// hinted at least C1rd.
Scalar ibp_residual(const TimeScale& T, const ScaleFn& f, const ScaleFn& g, const Scalar& a,
                    const Scalar& b, IbpForm form, const Tolerances& tol = {});

struct SmoothnessFinding {
    Scalar t;
    /// Numeric left limit of f^Δ at t.
    double left_limit = 0.0;
    /// Exact quotient f^Δ(t).
    Scalar quotient;
    bool derivative_jumps = false;
    std::string message;
};

/// Compares lim_{s→t-} f^Δ(s) with f^Δ(t) at every dense junction of T.
/// A jump means f is at best C1rd there, not C1.
std::vector<SmoothnessFinding> audit_smoothness(const TimeScale& T, const ScaleFn& f,
                                                const Tolerances& tol = {});

/// Adaptive Simpson on [lo, hi] with absolute tolerance `tol`; the right
/// end is sampled through `f_hi` (a left limit when the integrand jumps there).
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double f_hi,
                        double tol, int max_depth);

} // namespace tsvar
