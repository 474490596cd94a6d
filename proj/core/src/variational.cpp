#include "tsvar/variational.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "coordinate_descent.hpp"
#include "linear_algebra.hpp"
#include "tsvar/errors.hpp"

namespace tsvar {

Lagrangian Lagrangian::from_polynomial(const Polynomial& p)
{
    if (p.variables() != std::vector<std::string>{"t", "y", "v"}) {
        throw DomainError("a Lagrangian polynomial must be over (t, y, v)");
    }
    Polynomial dy = p.derivative("y");
    Polynomial dv = p.derivative("v");
    Lagrangian L;
    L.value = [p](const Scalar& t, const Scalar& y, const Scalar& v) { return p({t, y, v}); };
    L.d_y = [dy](const Scalar& t, const Scalar& y, const Scalar& v) { return dy({t, y, v}); };
    L.d_v = [dv](const Scalar& t, const Scalar& y, const Scalar& v) { return dv({t, y, v}); };
    L.partials = "analytic";
    L.description = p.str();
    return L;
}

Lagrangian Lagrangian::from_closure(Fn value, std::string description)
{
    auto step = [](const Scalar& x) { return 1e-6 * std::max(1.0, std::abs(x.to_double())); };
    Lagrangian L;
    L.value = value;
    L.d_y = [value, step](const Scalar& t, const Scalar& y, const Scalar& v) {
        double h = step(y);
        double yd = y.to_double();
        return Scalar((value(t, Scalar(yd + h), v).to_double() - value(t, Scalar(yd - h), v).to_double())
                      / (2.0 * h));
    };
    L.d_v = [value, step](const Scalar& t, const Scalar& y, const Scalar& v) {
        double h = step(v);
        double vd = v.to_double();
        return Scalar((value(t, y, Scalar(vd + h)).to_double() - value(t, y, Scalar(vd - h)).to_double())
                      / (2.0 * h));
    };
    L.partials = "finite-difference";
    L.description = std::move(description);
    return L;
}

Lagrangian Lagrangian::builtin(std::string_view name)
{
    const std::vector<std::string> vars{"t", "y", "v"};
    if (name == "v2") {
        return from_polynomial(Polynomial::parse("v^2", vars));
    }
    if (name == "v2+y2") {
        return from_polynomial(Polynomial::parse("v^2 + y^2", vars));
    }
    if (name == "harmonic") {
        return from_polynomial(Polynomial::parse("v^2 - y^2", vars));
    }
    throw ParseError("unknown built-in Lagrangian '" + std::string(name) + "' (expected v2, v2+y2, harmonic)");
}

VariationalProblem::VariationalProblem(TimeScale scale_, Lagrangian lagrangian_, Scalar a_, Scalar b_,
                                       Scalar ya_, Scalar yb_)
    : scale(std::move(scale_)), lagrangian(std::move(lagrangian_)), a(scale.coerce(a_)), b(scale.coerce(b_)),
      ya(std::move(ya_)), yb(std::move(yb_))
{
    if (!(a < b)) {
        throw DomainError("a variational problem needs a < b");
    }
    if (!lagrangian.value || !lagrangian.d_y || !lagrangian.d_v) {
        throw PreconditionError("Lagrangian is missing its value or partials");
    }
}

namespace {

// L_y and L_v along (t, ŷ^σ(t), ŷ^Δ(t)).
struct Trajectory {
    ScaleFn y_sigma;
    ScaleFn y_delta;
};

ScaleFn along(const Lagrangian::Fn& fn, const Trajectory& tr)
{
    return ScaleFn([fn, tr](const Scalar& t) { return fn(t, tr.y_sigma(t), tr.y_delta(t)); },
                   [fn, tr](const Scalar& t) {
                       return fn(t, tr.y_sigma.left_limit(t), tr.y_delta.left_limit(t));
                   },
                   Smoothness::rd_continuous);
}

} // namespace

ELReport el_residual(const VariationalProblem& p, const ScaleFn& y_hat, const Tolerances& tol)
{
    const TimeScale& T = p.scale;
    const Scalar upper = T.rho(p.b);
    ELReport report;
    report.partials = p.lagrangian.partials;
    report.findings = definedness_audit(p);

    Trajectory tr{compose_sigma(T, y_hat), delta_fn(T, y_hat, tol)};
    ScaleFn L_y = along(p.lagrangian.d_y, tr);
    ScaleFn L_v = along(p.lagrangian.d_v, tr);

    std::vector<Scalar> points = T.restrict(p.a, upper).grid(32);
    std::vector<Scalar> w;
    w.reserve(points.size());
    Scalar accumulated = Scalar(0).in_mode(T.mode());
    try {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (i > 0) {
                accumulated += delta_integral(T, L_y, points[i - 1], points[i], tol);
            }
            w.push_back(L_v(points[i]) - accumulated);
        }
    } catch (const DomainError& e) {
        throw DomainError(std::string("y_hat is not defined where the Euler-Lagrange residual needs it: ")
                          + e.what());
    }

    Scalar mean = Scalar(0).in_mode(T.mode());
    for (const auto& x : w) {
        mean += x;
    }
    mean /= Scalar(static_cast<long>(w.size()));
    report.c_hat = mean;
    report.max_abs_residual = Scalar(0).in_mode(T.mode());
    for (std::size_t i = 0; i < points.size(); ++i) {
        Scalar r = w[i] - mean;
        report.max_abs_residual = max(report.max_abs_residual, abs(r));
        report.residual.emplace_back(points[i], std::move(r));
    }
    return report;
}

std::vector<AuditFinding> definedness_audit(const VariationalProblem& p)
{
    PointClass c = p.scale.classify(p.b);
    if (c.left_scattered()) {
        return {AuditFinding{
            "left-scattered-endpoint",
            "b=" + p.b.str() + " is left-scattered: L_v(b) requires y^Δ(b), which needs y beyond b and is "
                "undefined on [a,b]; the integral-form Euler-Lagrange equation holds only on [a,ρ(b)] = ["
                + p.a.str() + "," + p.scale.rho(p.b).str()
                + "]; transversality conditions that use L_v(b) are unsupported"}};
    }
    return {AuditFinding{"no-gap", "b=" + p.b.str()
                                       + " is left-dense: the Euler-Lagrange equation reaches b, no gap"}};
}

std::string_view to_string(KernelVariant v)
{
    return v == KernelVariant::delta ? "delta" : "nabla";
}

KernelVariant parse_kernel_variant(std::string_view text)
{
    if (text == "delta") {
        return KernelVariant::delta;
    }
    if (text == "nabla") {
        return KernelVariant::nabla;
    }
    throw ParseError("unknown kernel variant '" + std::string(text) + "' (expected delta|nabla)");
}

KernelReport fl_kernel(const TimeScale& T, KernelVariant variant, const Scalar& a, const Scalar& b)
{
    Scalar lo = T.coerce(a);
    Scalar hi = T.coerce(b);
    if (hi < lo) {
        throw DomainError("fl_kernel needs a <= b");
    }
    if (!T.is_discrete_on(lo, hi)) {
        throw UnsupportedError("fundamental-lemma kernel needs a scale that is discrete on [a,b]");
    }
    TimeScale R = T.restrict(lo, hi);
    std::vector<Scalar> P = R.points();

    KernelReport report;
    report.variant = variant;
    for (const auto& s : P) {
        if (lo < s && s < hi) {
            report.free_variations.push_back(s);
        }
    }

    // (M-point, η-point, weight) triples of the pairing.
    struct Pairing {
        Scalar t;
        Scalar eta_at;
        Scalar weight;
    };
    std::vector<Pairing> pairs;
    if (variant == KernelVariant::delta) {
        for (const auto& t : P) {
            if (t < hi) {
                pairs.push_back({t, R.sigma(t), R.mu(t)});
            }
        }
        report.claimed_domain = R.truncate_k2().points();
    } else {
        for (const auto& t : P) {
            if (lo < t) {
                pairs.push_back({t, t, R.nu(t)});
            }
        }
        report.claimed_domain = P;
    }

    for (const auto& pr : pairs) {
        report.domain.push_back(pr.t);
    }
    report.domain.insert(report.domain.end(), report.claimed_domain.begin(), report.claimed_domain.end());
    std::sort(report.domain.begin(), report.domain.end());
    report.domain.erase(std::unique(report.domain.begin(), report.domain.end()), report.domain.end());

    auto index_in = [](const std::vector<Scalar>& v, const Scalar& x) -> std::ptrdiff_t {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        return (it != v.end() && *it == x) ? it - v.begin() : -1;
    };

    const std::size_t cols = report.domain.size();
    detail::RationalMatrix A(report.free_variations.size(), std::vector<mpq_class>(cols, mpq_class(0)));
    for (const auto& pr : pairs) {
        std::ptrdiff_t row = index_in(report.free_variations, pr.eta_at);
        if (row < 0) {
            continue; // η pinned to zero there
        }
        std::ptrdiff_t col = index_in(report.domain, pr.t);
        Scalar w = pr.weight.in_mode(NumericMode::rational);
        A[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] += w.exact();
    }

    std::vector<bool> forced = detail::unit_vectors_in_row_space(A, cols);
    report.rank = detail::rref(A, cols).rank();
    for (std::size_t j = 0; j < cols; ++j) {
        (forced[j] ? report.constrained : report.unconstrained).push_back(report.domain[j]);
    }
    report.claim_holds = std::all_of(report.claimed_domain.begin(), report.claimed_domain.end(),
                                     [&](const Scalar& x) { return index_in(report.constrained, x) >= 0; });
    return report;
}

double discrete_action(const VariationalProblem& p, const std::vector<double>& y)
{
    std::vector<Scalar> P = p.scale.restrict(p.a, p.b).points();
    if (y.size() != P.size()) {
        throw DomainError("discrete_action: value count does not match [a,b]");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < P.size(); ++i) {
        double mu = (P[i + 1] - P[i]).to_double();
        Scalar v((y[i + 1] - y[i]) / mu);
        total += mu * p.lagrangian.value(P[i], Scalar(y[i + 1]), v).to_double();
    }
    return total;
}

ScaleFn brute_force_minimizer(const VariationalProblem& p, const MinimizerOptions& opts)
{
    if (!p.scale.is_discrete_on(p.a, p.b)) {
        throw UnsupportedError("brute_force_minimizer needs a scale that is discrete on [a,b]");
    }
    TimeScale R = p.scale.restrict(p.a, p.b);
    std::vector<Scalar> P = R.points();
    if (P.size() > opts.max_points) {
        throw PreconditionError("brute_force_minimizer handles at most " + std::to_string(opts.max_points)
                                + " points, got " + std::to_string(P.size()));
    }
    const std::size_t n = P.size();
    std::vector<double> mu(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        mu[i] = (P[i + 1] - P[i]).to_double();
    }
    const double ya = p.ya.to_double();
    const double yb = p.yb.to_double();
    const double span = (P.back() - P.front()).to_double();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = ya + (yb - ya) * (P[i] - P.front()).to_double() / span;
    }
    y.front() = ya;
    y.back() = yb;

    auto term = [&](const std::vector<double>& x, std::size_t k) {
        Scalar v((x[k + 1] - x[k]) / mu[k]);
        return mu[k] * p.lagrangian.value(P[k], Scalar(x[k + 1]), v).to_double();
    };
    // Only the cells [ρ(s), s) and [s, σ(s)) see y(s).
    auto local = [&](const std::vector<double>& x, std::size_t i) { return term(x, i - 1) + term(x, i); };

    std::vector<std::size_t> free;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        free.push_back(i);
    }
    detail::coordinate_descent(y, free, local, opts.stationarity, opts.max_sweeps);

    std::vector<std::pair<Scalar, Scalar>> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar value = i == 0 ? p.ya : (i + 1 == n ? p.yb : Scalar(y[i]));
        rows.emplace_back(P[i], value);
    }
    return ScaleFn::table(R, std::move(rows));
}

} // namespace tsvar
