#include "tsvar/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <memory>
#include <vector>

#include "tsvar/errors.hpp"

namespace tsvar {

Tolerances Tolerances::from_env()
{
    Tolerances tol;
    if (const char* env = std::getenv("TSVAR_TOL"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        double value = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(value > 0.0) || !std::isfinite(value)) {
            throw ParseError(std::string("TSVAR_TOL must be a positive number, got '") + env + "'");
        }
        tol.quad = value;
        tol.deriv = value;
    }
    return tol;
}

std::string_view to_string(DerivMethod m)
{
    return m == DerivMethod::exact_quotient ? "exact-quotient" : "numeric-limit";
}

namespace {

enum class Side { central, forward, backward };

struct Limit {
    double value = 0.0;
    double error = std::numeric_limits<double>::infinity();
};

// Richardson-extrapolated difference quotient on a halving step sequence.
// Keeps the entry with the smallest error estimate and stops once the
// tableau diagonal starts to grow (round-off takes over).
Limit richardson(const std::function<double(double)>& f, double t, double h0, Side side,
                 const Tolerances& tol)
{
    const double base = side == Side::central ? 4.0 : 2.0;
    const double f_t = side == Side::central ? 0.0 : f(t);
    auto quotient = [&](double h) {
        switch (side) {
        case Side::central: {
            double up = t + h;
            double down = t - h;
            return (f(up) - f(down)) / (up - down);
        }
        case Side::forward: {
            double up = t + h;
            return (f(up) - f_t) / (up - t);
        }
        case Side::backward: {
            double down = t - h;
            return (f_t - f(down)) / (t - down);
        }
        }
        return 0.0;
    };

    const int n = tol.deriv_max_halvings + 1;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
    double h = h0;
    a[0][0] = quotient(h);
    Limit best{a[0][0], std::numeric_limits<double>::infinity()};
    for (int i = 1; i < n; ++i) {
        h *= 0.5;
        a[0][static_cast<std::size_t>(i)] = quotient(h);
        double fac = base;
        for (int j = 1; j <= i; ++j) {
            auto uj = static_cast<std::size_t>(j);
            auto ui = static_cast<std::size_t>(i);
            a[uj][ui] = (a[uj - 1][ui] * fac - a[uj - 1][ui - 1]) / (fac - 1.0);
            fac *= base;
            double err = std::max(std::abs(a[uj][ui] - a[uj - 1][ui]),
                                  std::abs(a[uj][ui] - a[uj - 1][ui - 1]));
            if (err <= best.error) {
                best = {a[uj][ui], err};
            }
        }
        auto ui = static_cast<std::size_t>(i);
        // The first rows carry truncation error in every estimate, so the
        // divergence test only applies once the tableau has some depth.
        if (i >= 3 && std::abs(a[ui][ui] - a[ui - 1][ui - 1]) >= 2.0 * best.error) {
            break;
        }
        if (best.error <= tol.deriv * std::max(1.0, std::abs(best.value))) {
            break;
        }
    }
    return best;
}

DerivResult finish(const Limit& lim, const Scalar& t, const Tolerances& tol)
{
    if (!(lim.error <= tol.deriv * std::max(1.0, std::abs(lim.value)))) {
        throw ConvergenceError("delta derivative at t=" + t.str() + " did not converge (estimate "
                                   + format_double(lim.value) + ", error " + format_double(lim.error) + ")",
                               lim.value, lim.error);
    }
    return DerivResult{Scalar(lim.value), DerivMethod::numeric_limit, lim.error};
}

double step_cap(double t)
{
    return 0.125 * std::max(1.0, std::abs(t));
}

} // namespace

DerivResult delta_deriv(const TimeScale& T, const ScaleFn& f, const Scalar& t, const Tolerances& tol)
{
    Scalar x = T.coerce(t);
    Scalar s = T.sigma(x);
    if (x < s) {
        Scalar mu = s - x;
        return DerivResult{(f(s) - f(x)) / mu, DerivMethod::exact_quotient, 0.0};
    }
    const Piece& piece = T.pieces()[T.locate(x)];
    if (piece.is_point()) {
        // Right-dense isolated point: the maximum, with nothing to its left
        // inside the piece.
        throw UndefinedDerivative("derivative undefined at left-scattered maximum t=" + x.str()
                                  + " (t is not in T^k)");
    }
    const double xd = x.to_double();
    const double room_left = (x - piece.lo).to_double();
    const double room_right = (piece.hi - x).to_double();
    const double cap = step_cap(xd);
    auto eval = [&f](double s_) { return f(Scalar(s_)).to_double(); };
    auto eval_one_sided = [&f, &x, xd](double s_) {
        return s_ == xd ? f(x).to_double() : f(Scalar(s_)).to_double();
    };

    const double central_room = std::min(room_left, room_right);
    const double wide_room = std::max(room_left, room_right);
    Limit lim;
    if (central_room > 0.0 && central_room >= 0.05 * std::min(wide_room, cap)) {
        lim = richardson(eval, xd, 0.5 * std::min(central_room, cap), Side::central, tol);
    } else if (room_right >= room_left) {
        lim = richardson(eval_one_sided, xd, 0.5 * std::min(room_right, cap), Side::forward, tol);
    } else {
        lim = richardson(eval_one_sided, xd, 0.5 * std::min(room_left, cap), Side::backward, tol);
    }
    return finish(lim, x, tol);
}

DerivResult delta_deriv_left_limit(const TimeScale& T, const ScaleFn& f, const Scalar& t,
                                   const Tolerances& tol)
{
    Scalar x = T.coerce(t);
    const Piece& piece = T.pieces()[T.locate(x)];
    if (!(piece.lo < x)) {
        throw DomainError("t=" + x.str() + " is not approached from the left along the scale");
    }
    const double xd = x.to_double();
    const double room = (x - piece.lo).to_double();
    // f is sampled strictly inside the piece; at t itself its own left limit.
    auto eval = [&f, &x, xd](double s_) {
        return s_ == xd ? f.left_limit(x).to_double() : f(Scalar(s_)).to_double();
    };
    Limit lim = richardson(eval, xd, 0.5 * std::min(room, step_cap(xd)), Side::backward, tol);
    return finish(lim, x, tol);
}

ScaleFn delta_fn(const TimeScale& T, const ScaleFn& f, const Tolerances& tol)
{
    auto scale = std::make_shared<const TimeScale>(T);
    return ScaleFn([scale, f, tol](const Scalar& t) { return delta_deriv(*scale, f, t, tol).value; },
                   [scale, f, tol](const Scalar& t) {
                       if (scale->is_dense_junction(t)) {
                           return delta_deriv_left_limit(*scale, f, t, tol).value;
                       }
                       return delta_deriv(*scale, f, t, tol).value;
                   },
                   Smoothness::rd_continuous);
}

Scalar simple_useful_check(const TimeScale& T, const ScaleFn& f, const Scalar& t, const Tolerances& tol)
{
    Scalar x = T.coerce(t);
    DerivResult d = delta_deriv(T, f, x, tol);
    return abs(f(T.sigma(x)) - f(x) - T.mu(x) * d.value);
}

ProductRuleResidual product_rule_residual(const TimeScale& T, const ScaleFn& f, const ScaleFn& g,
                                          const Scalar& t, const Tolerances& tol)
{
    Scalar x = T.coerce(t);
    Scalar s = T.sigma(x);
    Scalar fg_d = delta_deriv(T, f * g, x, tol).value;
    Scalar f_d = delta_deriv(T, f, x, tol).value;
    Scalar g_d = delta_deriv(T, g, x, tol).value;
    Scalar fx = f(x);
    Scalar gx = g(x);
    Scalar fs = f(s);
    Scalar gs = g(s);
    return ProductRuleResidual{abs(fg_d - (f_d * gs + fx * g_d)), abs(fg_d - (f_d * gx + fs * g_d))};
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double f_hi,
                        double tol, int max_depth)
{
    struct Step {
        const std::function<double(double)>& f;
        int max_depth;

        double simpson(double a, double b, double fa, double fm, double fb) const
        {
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }

        double run(double a, double b, double fa, double fm, double fb, double whole, double eps,
                   int depth) const
        {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m);
            double rm = 0.5 * (m + b);
            double flm = f(lm);
            double frm = f(rm);
            double left = simpson(a, m, fa, flm, fm);
            double right = simpson(m, b, fm, frm, fb);
            double delta = left + right - whole;
            if (depth >= max_depth || std::abs(delta) <= 15.0 * eps || !(a < lm && rm < b)) {
                return left + right + delta / 15.0;
            }
            return run(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1)
                   + run(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
        }
    };
    if (!(lo < hi)) {
        return 0.0;
    }
    Step step{f, max_depth};
    double fa = f(lo);
    double fm = f(0.5 * (lo + hi));
    double whole = step.simpson(lo, hi, fa, fm, f_hi);
    return step.run(lo, hi, fa, fm, f_hi, whole, tol, 0);
}

namespace {

double integrate_interval(const ScaleFn& f, const Scalar& lo, const Scalar& hi, const Tolerances& tol)
{
    const double lo_d = lo.to_double();
    const double hi_d = hi.to_double();
    auto eval = [&](double x) {
        if (x == lo_d) {
            return f(lo).to_double();
        }
        return f(Scalar(x)).to_double();
    };
    return adaptive_simpson(eval, lo_d, hi_d, f.left_limit(hi).to_double(), tol.quad, tol.quad_max_depth);
}

} // namespace

Scalar delta_integral(const TimeScale& T, const ScaleFn& f, const Scalar& a, const Scalar& b,
                      const Tolerances& tol)
{
    Scalar lo = T.coerce(a);
    Scalar hi = T.coerce(b);
    if (hi < lo) {
        throw DomainError("delta_integral needs a <= b (got a=" + lo.str() + ", b=" + hi.str()
                          + "); reversed limits are rejected");
    }
    Scalar sum = Scalar(0).in_mode(T.mode());
    if (lo == hi) {
        return sum;
    }
    const auto& pieces = T.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (p.hi < lo || hi < p.lo) {
            continue;
        }
        Scalar clo = max(p.lo, lo);
        Scalar chi = min(p.hi, hi);
        if (clo < chi) {
            sum += Scalar(integrate_interval(f, clo, chi, tol));
        }
        if (chi == p.hi && chi < hi) {
            // Right-scattered: ∫_t^{σ(t)} f Δτ = μ(t) f(t).
            sum += (pieces[i + 1].lo - chi) * f(chi);
        }
    }
    return sum;
}

Scalar nabla_integral_discrete(const TimeScale& T, const ScaleFn& f, const Scalar& a, const Scalar& b)
{
    Scalar lo = T.coerce(a);
    Scalar hi = T.coerce(b);
    if (hi < lo) {
        throw DomainError("nabla_integral_discrete needs a <= b (got a=" + lo.str() + ", b=" + hi.str() + ")");
    }
    if (!T.is_discrete_on(lo, hi)) {
        throw UnsupportedError("nabla integral is only supported where the scale is discrete; [" + lo.str()
                               + ", " + hi.str() + "] contains an interval");
    }
    Scalar sum = Scalar(0).in_mode(T.mode());
    const auto& pieces = T.pieces();
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        // Every point of (a, b] here is the left end of its piece, so
        // ρ(x) is the previous piece's right end.
        const Scalar& x = pieces[i].lo;
        if (x <= lo || hi < x) {
            continue;
        }
        sum += (x - pieces[i - 1].hi) * f(x);
    }
    return sum;
}

Scalar ibp_residual(const TimeScale& T, const ScaleFn& f, const ScaleFn& g, const Scalar& a,
                    const Scalar& b, IbpForm form, const Tolerances& tol)
{
    auto require_c1rd = [](const ScaleFn& h, const char* name) {
        if (h.smoothness() == Smoothness::none || h.smoothness() == Smoothness::rd_continuous) {
            throw PreconditionError(std::string("integration by parts needs ") + name
                                    + " to be declared C1rd (hint is " + std::string(to_string(h.smoothness()))
                                    + ")");
        }
    };
    require_c1rd(f, "f");
    require_c1rd(g, "g");
    Scalar lo = T.coerce(a);
    Scalar hi = T.coerce(b);
    ScaleFn fd = delta_fn(T, f, tol);
    ScaleFn gd = delta_fn(T, g, tol);
    Scalar boundary = f(hi) * g(hi) - f(lo) * g(lo);
    Scalar lhs;
    Scalar rhs;
    if (form == IbpForm::sigma_on_f) {
        lhs = delta_integral(T, compose_sigma(T, f) * gd, lo, hi, tol);
        rhs = boundary - delta_integral(T, fd * g, lo, hi, tol);
    } else {
        lhs = delta_integral(T, f * gd, lo, hi, tol);
        rhs = boundary - delta_integral(T, fd * compose_sigma(T, g), lo, hi, tol);
    }
    return abs(lhs - rhs);
}

std::vector<SmoothnessFinding> audit_smoothness(const TimeScale& T, const ScaleFn& f, const Tolerances& tol)
{
    std::vector<SmoothnessFinding> findings;
    const auto& pieces = T.pieces();
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].is_point()) {
            continue;
        }
        const Scalar& t = pieces[i].hi;
        SmoothnessFinding finding;
        finding.t = t;
        finding.left_limit = delta_deriv_left_limit(T, f, t, tol).value.to_double();
        finding.quotient = delta_deriv(T, f, t, tol).value;
        double q = finding.quotient.to_double();
        finding.derivative_jumps = std::abs(finding.left_limit - q) > 1e-6 * std::max(1.0, std::abs(q));
        if (finding.derivative_jumps) {
            finding.message = "f^Δ jumps at left-dense right-scattered t=" + t.str() + ": left limit "
                              + format_double(finding.left_limit) + " vs quotient " + finding.quotient.str()
                              + "; rd-continuous derivative only, not C1";
        } else {
            finding.message = "f^Δ continuous at junction t=" + t.str();
        }
        findings.push_back(std::move(finding));
    }
    return findings;
}

} // namespace tsvar
