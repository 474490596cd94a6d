#include "tsvar/counterexamples.hpp"

#include <cmath>
#include <random>

#include "tsvar/calculus.hpp"
#include "tsvar/errors.hpp"
#include "tsvar/io.hpp"
#include "tsvar/product.hpp"
#include "tsvar/variational.hpp"

namespace tsvar {

void Verdict::check(std::string name, std::string value, std::string expected, bool ok)
{
    details.push_back({std::move(name), std::move(value), std::move(expected), ok});
}

void Verdict::finish()
{
    confirmed = !details.empty();
    for (const auto& d : details) {
        confirmed = confirmed && d.ok;
    }
}

nlohmann::json to_json(const Verdict& v)
{
    nlohmann::json details = nlohmann::json::array();
    for (const auto& d : v.details) {
        details.push_back({{"name", d.name}, {"value", d.value}, {"expected", d.expected}, {"ok", d.ok}});
    }
    return {{"id", v.id}, {"claim", v.claim}, {"witness", v.witness}, {"confirmed", v.confirmed}, {"details", details}};
}

namespace {

std::string show(const std::vector<Scalar>& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + xs[i].str();
    }
    return out + "}";
}

nlohmann::json to_json_array(const std::vector<Scalar>& xs)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : xs) {
        out.push_back(io::scalar_to_json(x));
    }
    return out;
}

bool contains_all(const std::vector<Scalar>& haystack, const std::vector<Scalar>& needles)
{
    return std::all_of(needles.begin(), needles.end(), [&](const Scalar& n) {
        return std::find(haystack.begin(), haystack.end(), n) != haystack.end();
    });
}

void require_junction(const TimeScale& T, const Scalar& t, std::string_view who)
{
    if (!T.contains(t) || !T.is_dense_junction(t)) {
        throw PreconditionError(std::string(who) + ": t = " + t.str() + " must be a left-dense right-scattered point of "
                                + T.str());
    }
}

TimeScale default_hybrid()
{
    return TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar::ratio(3, 2))});
}

} // namespace

double left_limit_along(const TimeScale& T, const std::function<double(double)>& g, const Scalar& t, double tol)
{
    require_junction(T, t, "left limit");
    const Piece& piece = T.pieces()[T.locate(t)];
    const double tt = t.to_double();
    const double d = (piece.hi - piece.lo).to_double();
    double prev = g(tt - 0.5 * d);
    for (int n = 2; n <= 60; ++n) {
        double s = tt - std::ldexp(d, -n);
        double cur = g(s);
        if (std::abs(cur - prev) <= tol) {
            // First-order Richardson step for the halving sequence.
            return 2.0 * cur - prev;
        }
        prev = cur;
    }
    throw ConvergenceError("left limit along the time scale did not settle", prev, tol);
}

Verdict cx_nabla_endpoints(const NablaEndpointsOptions& opts)
{
    Verdict v;
    v.id = "nabla-endpoints";
    v.claim = "∇-orthogonality against every g with g(ρ(a)) = g(b) = 0 leaves f(ρ(a)) and f(b) free";

    const long k = opts.shift;
    const TimeScale T = TimeScale::integers(1 + k, 5 + k);
    const std::vector<Scalar> pts = T.points();
    const Scalar a = pts.front();
    const Scalar b = pts.back();

    std::vector<Scalar> f_vals = opts.f.value_or(std::vector<Scalar>{1, 0, 0, 0, 1});
    if (f_vals.size() != pts.size()) {
        throw PreconditionError("nabla-endpoints: f needs exactly 5 values");
    }
    auto tabulate = [&](const std::vector<Scalar>& vals) {
        std::vector<std::pair<Scalar, Scalar>> rows;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            rows.emplace_back(pts[i], vals[i]);
        }
        return ScaleFn::table(T, rows);
    };
    const ScaleFn f = tabulate(f_vals);

    // Indicators of the interior points span the g with g(a) = g(b) = 0.
    std::vector<std::pair<std::string, std::vector<Scalar>>> gs;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        std::vector<Scalar> g(pts.size(), Scalar(0));
        g[i] = Scalar(1);
        gs.emplace_back("indicator at " + pts[i].str(), std::move(g));
    }
    const std::size_t basis_size = gs.size();
    {
        std::mt19937 rng(opts.seed);
        std::uniform_int_distribution<long> num(-9, 9);
        std::uniform_int_distribution<long> den(1, 7);
        std::vector<Scalar> g(pts.size(), Scalar(0));
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            g[i] = Scalar::ratio(num(rng), den(rng));
        }
        gs.emplace_back("random g " + show(g), std::move(g));
    }

    nlohmann::json g_json = nlohmann::json::array();
    for (const auto& [name, g] : gs) {
        Scalar value = nabla_integral_discrete(T, f * tabulate(g), a, b);
        v.check("∇-integral over (" + a.str() + "," + b.str() + "] of f·g, " + name, value.str(), "0",
                value.is_zero());
        g_json.push_back({{"name", name}, {"values", to_json_array(g)}, {"integral", io::scalar_to_json(value)}});
    }

    v.check("f(" + a.str() + ")", f(a).str(), "≠ 0", !f(a).is_zero());
    v.check("f(" + b.str() + ")", f(b).str(), "≠ 0", !f(b).is_zero());

    KernelReport kernel = fl_kernel(T, KernelVariant::nabla, a, b);
    v.check("kernel unconstrained points", show(kernel.unconstrained), "⊇ " + show({a, b}),
            contains_all(kernel.unconstrained, {a, b}));
    v.check("pairing rank", std::to_string(kernel.rank), std::to_string(basis_size), kernel.rank == basis_size);

    v.witness = {{"scale", io::scale_to_json(T)},
                 {"f", to_json_array(f_vals)},
                 {"g", g_json},
                 {"kernel",
                  {{"constrained", to_json_array(kernel.constrained)},
                   {"unconstrained", to_json_array(kernel.unconstrained)},
                   {"rank", kernel.rank}}}};
    v.finish();
    return v;
}

Verdict cx_eta_not_c1(const TimeScale& T, const Scalar& u1, const Scalar& t0)
{
    require_junction(T, t0, "eta-not-c1");
    const Scalar su = T.sigma(T.coerce(u1));
    if (!(su < t0)) {
        throw PreconditionError("eta-not-c1: σ(u1) = " + su.str() + " must lie below t0 = " + t0.str());
    }
    const Scalar st = T.sigma(t0);

    Verdict v;
    v.id = "eta-not-c1";
    v.claim = "η^Δ is not continuous at the left-dense right-scattered point t0";

    const ScaleFn eta([su, st](const Scalar& t) {
        if (t < su || st < t) {
            return Scalar(0).in_mode(t.is_exact() ? NumericMode::rational : NumericMode::floating);
        }
        return pow(t - su, 2) * pow(st - t, 2);
    });
    // (t + σ(t) - 2σ(u1))(σ(t0) - t)² + (σ(t) - σ(u1))²(t + σ(t) - 2σ(t0))
    auto formula = [&T, su, st](const Scalar& t) {
        Scalar s = T.sigma(t);
        return (t + s - 2 * su) * pow(st - t, 2) + pow(s - su, 2) * (t + s - 2 * st);
    };

    const Scalar at_t0 = formula(t0);
    const DerivResult quotient = delta_deriv(T, eta, t0);
    // σ(s) = s on the dense side, so the formula is the classical derivative there.
    const double left = left_limit_along(
        T, [&](double s) { return formula(T.coerce(Scalar(s))).to_double(); }, t0);
    const double jump = left - at_t0.to_double();

    v.check("η^Δ(t0) by formula", at_t0.str(), "= exact quotient " + quotient.value.str(),
            at_t0.is_exact() ? at_t0 == quotient.value
                             : std::abs(at_t0.to_double() - quotient.value.to_double()) <= 1e-12);
    v.check("lim_{s→t0⁻} η^Δ(s)", format_double(left), "≠ η^Δ(t0)", std::abs(jump) > 1e-9);
    v.check("jump", format_double(jump), "≠ 0", std::abs(jump) > 1e-9);
    v.check("η(σ(u1))", eta(su).str(), "0", eta(su).is_zero());
    v.check("η(σ(t0))", eta(st).str(), "0", eta(st).is_zero());

    v.witness = {{"scale", io::scale_to_json(T)},
                 {"u1", io::scalar_to_json(u1)},
                 {"sigma_u1", io::scalar_to_json(su)},
                 {"t0", io::scalar_to_json(t0)},
                 {"sigma_t0", io::scalar_to_json(st)},
                 {"eta", "(t - σ(u1))^2 (σ(t0) - t)^2 on [σ(u1), σ(t0)], 0 elsewhere"},
                 {"formula_at_t0", io::scalar_to_json(at_t0)},
                 {"exact_quotient_at_t0", io::scalar_to_json(quotient.value)},
                 {"left_limit", left},
                 {"jump", jump}};
    v.finish();
    return v;
}

Verdict cx_eta_not_c1()
{
    return cx_eta_not_c1(default_hybrid(), Scalar::ratio(1, 4), Scalar(1));
}

Verdict cx_omega_degenerate(const std::optional<std::vector<std::vector<Scalar>>>& M_table)
{
    Verdict v;
    v.id = "omega-degenerate";
    v.claim = "with Ω = {(x0,y0)} the constructed η vanishes on all of E, so ∫∫ M η(σ1,σ2) = 0 for every M";

    const TimeScale T = TimeScale::integers(0, 5);
    const ProductScale E(T, T);
    const Scalar x0(1), y0(1), x1(1), y1(1);
    const Scalar sx1 = T.sigma(x1);
    const Scalar sy1 = T.sigma(y1);
    auto in_omega = [&](const Scalar& x, const Scalar& y) { return x0 <= x && x < sx1 && y0 <= y && y < sy1; };
    auto raw = [&](const Scalar& x, const Scalar& y) {
        return pow(x - x0, 2) * pow(x - sx1, 2) * pow(y - y0, 2) * pow(y - sy1, 2);
    };
    const SurfaceFn eta([&](const Scalar& x, const Scalar& y) { return in_omega(x, y) ? raw(x, y) : Scalar(0); });

    nlohmann::json omega = nlohmann::json::array();
    bool vanishes = true;
    for (const auto& x : T.points()) {
        for (const auto& y : T.points()) {
            vanishes = vanishes && eta(x, y).is_zero();
            if (in_omega(x, y)) {
                omega.push_back(to_json_array({x, y}));
            }
        }
    }
    v.check("|Ω|", std::to_string(omega.size()), "1", omega.size() == 1);
    v.check("η(x0,y0)", eta(x0, y0).str(), "0", eta(x0, y0).is_zero());
    v.check("η on E", vanishes ? "≡ 0" : "nonzero somewhere", "≡ 0", vanishes);

    std::vector<std::vector<Scalar>> m(6, std::vector<Scalar>(6, Scalar(0)));
    m[1][1] = Scalar(1);
    if (M_table) {
        m = *M_table;
    }
    const SurfaceFn M = SurfaceFn::table(E, m);
    const SurfaceFn integrand([&](const Scalar& x, const Scalar& y) { return M(x, y) * eta(T.sigma(x), T.sigma(y)); });
    const Scalar integral = double_integral(E, integrand, E.full_rect());
    v.check("∫∫_E M η(σ1,σ2)", integral.str(), "0", integral.is_zero());
    v.check("M(x0,y0)", M(x0, y0).str(), M_table ? "any" : "> 0", M_table || Scalar(0) < M(x0, y0));

    const Scalar px = T.sigma(x0);
    const Scalar py = T.sigma(y0);
    const std::string read = "(" + px.str() + "," + py.str() + ")";
    v.check("pairing at (x0,y0) reads η at", read, "outside Ω", !in_omega(px, py));

    nlohmann::json m_json = nlohmann::json::array();
    for (const auto& row : m) {
        m_json.push_back(to_json_array(row));
    }
    v.witness = {{"E", {{"scale1", io::scale_to_json(T)}, {"scale2", io::scale_to_json(T)}}},
                 {"x0", "1"},
                 {"y0", "1"},
                 {"x1", "1"},
                 {"y1", "1"},
                 {"omega", omega},
                 {"eta", "(x-x0)^2 (x-σ1(x1))^2 (y-y0)^2 (y-σ2(y1))^2 on Ω, 0 elsewhere"},
                 {"M", m_json},
                 {"integral", io::scalar_to_json(integral)},
                 {"note", "Green's formula needs continuous partial delta derivatives; the admissible class does not "
                          "provide them"}};
    v.finish();
    return v;
}

Verdict cx_sigma_discontinuity(const TimeScale& T, const Scalar& t)
{
    require_junction(T, t, "sigma-discontinuity");
    Verdict v;
    v.id = "sigma-discontinuity";
    v.claim = "σ is not continuous at a left-dense right-scattered point";

    const double left = left_limit_along(T, [&](double s) { return T.sigma(T.coerce(Scalar(s))).to_double(); }, t);
    const Scalar s = T.sigma(t);
    const Scalar gap = T.mu(t);
    v.check("lim_{s→t⁻} σ(s)", format_double(left), "= t = " + t.str(), std::abs(left - t.to_double()) <= 1e-9);
    v.check("σ(t)", s.str(), "> t", t < s);
    v.check("μ(t)", gap.str(), "> 0", Scalar(0) < gap);

    v.witness = {{"scale", io::scale_to_json(T)},
                 {"t", io::scalar_to_json(t)},
                 {"left_limit", left},
                 {"sigma", io::scalar_to_json(s)},
                 {"gap", io::scalar_to_json(gap)}};
    v.finish();
    return v;
}

Verdict cx_sigma_discontinuity()
{
    return cx_sigma_discontinuity(default_hybrid(), Scalar(1));
}

} // namespace tsvar
