#include "tsvar/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tsvar/calculus.hpp"
#include "tsvar/counterexamples.hpp"
#include "tsvar/errors.hpp"
#include "tsvar/io.hpp"
#include "tsvar/product.hpp"
#include "tsvar/variational.hpp"

namespace tsvar::cli {

namespace {

using nlohmann::json;

struct Report {
    json results = json::object();
    json findings = json::array();
    bool ok = true;
};

// Everything a subcommand reads from the command line.
struct Options {
    std::string format = "json";
    std::string out;
    std::string scale;
    std::string scale1;
    std::string scale2;
    std::optional<double> tol;

    std::string fn;
    std::string table;
    std::string g;
    std::string g_table;
    std::string t;
    std::string a;
    std::string b;
    std::string rect;
    std::string variant = "delta";
    std::string problem;
    std::string y;
    std::string u;
    std::string eta;
    std::string boundary = "0";
    std::string u1;
    std::string t0;
    std::string id;
    int form = 0;
    bool nabla = false;
    bool minimize = false;
};

class Context {
public:
    explicit Context(const Options& o) : opt(o)
    {
        tol = Tolerances::from_env();
        if (opt.tol) {
            tol.quad = *opt.tol;
        }
    }

    const Options& opt;
    Tolerances tol;
    std::string digest_input;

    double threshold() const { return 10.0 * tol.quad; }

    json load(const std::string& text)
    {
        json j = !text.empty() && text.front() == '{' ? io::parse_json_text(text, "<inline>") : io::load_json_file(text);
        digest_input += j.dump();
        digest_input.push_back('\0');
        return j;
    }

    TimeScale scale(const std::string& text, const char* flag)
    {
        if (text.empty()) {
            throw CLI::RequiredError(flag);
        }
        return io::scale_from_json(load(text));
    }

    Scalar scalar(const std::string& text, const char* flag, NumericMode mode) const
    {
        if (text.empty()) {
            throw CLI::RequiredError(flag);
        }
        return Scalar::parse(text).in_mode(mode);
    }

    // --fn takes a polynomial in t; --table a tabulated function.
    ScaleFn function(const std::string& expr, const std::string& table, const char* flag)
    {
        if (!table.empty()) {
            return io::table_from_json(load(table));
        }
        if (expr.empty()) {
            throw CLI::RequiredError(flag);
        }
        return ScaleFn::polynomial(Polynomial::parse(expr, {"t"}));
    }

    // Exact results must vanish; floating results must stay below the threshold.
    bool small(const Scalar& s) const { return s.is_exact() ? s.is_zero() : std::abs(s.to_double()) <= threshold(); }
};

std::string fnv1a(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

json scalars(const std::vector<Scalar>& xs)
{
    json out = json::array();
    for (const auto& x : xs) {
        out.push_back(io::scalar_to_json(x));
    }
    return out;
}

json classification(const TimeScale& T, const Scalar& t)
{
    return {{"t", io::scalar_to_json(t)},
            {"class", T.classify(t).str()},
            {"sigma", io::scalar_to_json(T.sigma(t))},
            {"rho", io::scalar_to_json(T.rho(t))},
            {"mu", io::scalar_to_json(T.mu(t))},
            {"nu", io::scalar_to_json(T.nu(t))}};
}

Report cmd_classify(Context& c)
{
    TimeScale T = c.scale(c.opt.scale, "--scale");
    Report r;
    r.results["scale"] = io::scale_to_json(T);
    r.results["truncate_k"] = io::scale_to_json(T.truncate_k());
    r.results["truncate_k2"] = io::scale_to_json(T.truncate_k2());
    json points = json::array();
    if (!c.opt.t.empty()) {
        points.push_back(classification(T, T.coerce(c.scalar(c.opt.t, "--t", T.mode()))));
    } else {
        for (const auto& p : T.pieces()) {
            points.push_back(classification(T, p.lo));
            if (!p.is_point()) {
                points.push_back(classification(T, p.hi));
            }
        }
    }
    r.results["points"] = points;
    return r;
}

Report cmd_deriv(Context& c)
{
    TimeScale T = c.scale(c.opt.scale, "--scale");
    ScaleFn f = c.function(c.opt.fn, c.opt.table, "--fn");
    Scalar t = T.coerce(c.scalar(c.opt.t, "--t", T.mode()));
    DerivResult d = delta_deriv(T, f, t, c.tol);
    Report r;
    r.results["t"] = io::scalar_to_json(t);
    r.results["value"] = io::scalar_to_json(d.value);
    r.results["method"] = std::string(to_string(d.method));
    r.results["est_error"] = d.est_error;
    if (T.classify(t).right_scattered()) {
        Scalar residual = simple_useful_check(T, f, t, c.tol);
        r.results["simple_useful_residual"] = io::scalar_to_json(residual);
        r.ok = c.small(residual);
    }
    return r;
}

Report cmd_integrate(Context& c)
{
    TimeScale T = c.scale(c.opt.scale, "--scale");
    ScaleFn f = c.function(c.opt.fn, c.opt.table, "--fn");
    Scalar a = c.scalar(c.opt.a, "--a", T.mode());
    Scalar b = c.scalar(c.opt.b, "--b", T.mode());
    Report r;
    r.results["kind"] = c.opt.nabla ? "nabla" : "delta";
    r.results["value"] = io::scalar_to_json(c.opt.nabla ? nabla_integral_discrete(T, f, a, b)
                                                        : delta_integral(T, f, a, b, c.tol));
    return r;
}

Report cmd_ibp(Context& c)
{
    TimeScale T = c.scale(c.opt.scale, "--scale");
    ScaleFn f = c.function(c.opt.fn, c.opt.table, "--fn");
    ScaleFn g = c.function(c.opt.g, c.opt.g_table, "--g");
    Scalar a = c.scalar(c.opt.a, "--a", T.mode());
    Scalar b = c.scalar(c.opt.b, "--b", T.mode());
    Report r;
    for (int form : {1, 2}) {
        if (c.opt.form != 0 && c.opt.form != form) {
            continue;
        }
        Scalar residual = ibp_residual(T, f, g, a, b, static_cast<IbpForm>(form), c.tol);
        r.results["form" + std::to_string(form)] = io::scalar_to_json(residual);
        r.ok = r.ok && c.small(residual);
    }
    return r;
}

Report cmd_el(Context& c)
{
    VariationalProblem p = io::problem_from_json(c.load(c.opt.problem.empty() ? throw CLI::RequiredError("--problem")
                                                                               : c.opt.problem));
    Report r;
    std::optional<ScaleFn> y;
    if (c.opt.minimize) {
        y = brute_force_minimizer(p);
        r.results["minimizer"] = io::table_to_json(*y);
    } else if (!c.opt.y.empty()) {
        y = io::table_from_json(c.load(c.opt.y));
    } else {
        throw CLI::RequiredError("--y or --minimize");
    }
    ELReport report = el_residual(p, *y, c.tol);
    json samples = json::array();
    for (const auto& [t, v] : report.residual) {
        samples.push_back(json::array({io::scalar_to_json(t), io::scalar_to_json(v)}));
    }
    r.results["residual"] = samples;
    r.results["c_hat"] = io::scalar_to_json(report.c_hat);
    r.results["max_abs_residual"] = io::scalar_to_json(report.max_abs_residual);
    r.results["partials"] = report.partials;
    for (const auto& f : report.findings) {
        r.findings.push_back({{"code", f.code}, {"message", f.message}});
    }
    r.ok = c.small(report.max_abs_residual);
    return r;
}

Report cmd_kernel(Context& c)
{
    TimeScale T = c.scale(c.opt.scale, "--scale");
    KernelVariant v = parse_kernel_variant(c.opt.variant);
    Scalar a = c.opt.a.empty() ? T.min() : c.scalar(c.opt.a, "--a", T.mode());
    Scalar b = c.opt.b.empty() ? T.max() : c.scalar(c.opt.b, "--b", T.mode());
    KernelReport k = fl_kernel(T, v, a, b);
    Report r;
    r.results["variant"] = std::string(to_string(k.variant));
    r.results["domain"] = scalars(k.domain);
    r.results["constrained"] = scalars(k.constrained);
    r.results["unconstrained"] = scalars(k.unconstrained);
    r.results["claimed_domain"] = scalars(k.claimed_domain);
    r.results["free_variations"] = scalars(k.free_variations);
    r.results["rank"] = k.rank;
    r.results["claim_holds"] = k.claim_holds;
    if (!k.claim_holds) {
        r.findings.push_back({{"code", "claimed-domain-not-forced"},
                              {"message", "some points of the claimed domain are not forced to zero"}});
    }
    return r;
}

ProductScale product_scale(Context& c)
{
    if (!c.opt.scale.empty() && c.opt.scale1.empty() && c.opt.scale2.empty()) {
        TimeScale T = c.scale(c.opt.scale, "--scale");
        return ProductScale(T, T);
    }
    return ProductScale(c.scale(c.opt.scale1, "--scale1"), c.scale(c.opt.scale2, "--scale2"));
}

Rect rect_from(Context& c, const ProductScale& ps)
{
    if (c.opt.rect.empty()) {
        return ps.full_rect();
    }
    std::vector<Scalar> v;
    std::stringstream in(c.opt.rect);
    for (std::string part; std::getline(in, part, ',');) {
        v.push_back(Scalar::parse(part).in_mode(ps.first().mode()));
    }
    if (v.size() != 4) {
        throw ParseError("--rect expects a1,b1,a2,b2");
    }
    return Rect{v[0], v[1], v[2], v[3]};
}

DoubleProblem double_problem(Context& c)
{
    if (c.opt.problem.empty()) {
        throw CLI::RequiredError("--problem");
    }
    return io::double_problem_from_json(c.load(c.opt.problem));
}

SurfaceFn surface(Context& c, const std::string& text, const char* flag)
{
    if (text.empty()) {
        throw CLI::RequiredError(flag);
    }
    if (text.front() == '{' || text.find(".json") != std::string::npos) {
        return io::surface_table_from_json(c.load(text));
    }
    return SurfaceFn::polynomial(Polynomial::parse(text, {"t1", "t2"}));
}

Report cmd_double_el(Context& c)
{
    DoubleProblem dp = double_problem(c);
    Report r;
    std::optional<SurfaceFn> u;
    if (c.opt.minimize) {
        u = brute_force_double_minimizer(dp, surface(c, c.opt.boundary, "--boundary"));
        r.results["minimizer"] = io::surface_table_to_json(*u);
    } else {
        u = surface(c, c.opt.u, "--u or --minimize");
    }
    DoubleResidual res = double_el_residual(dp, *u, c.tol);
    json samples = json::array();
    for (const auto& s : res.samples) {
        samples.push_back(json::array({io::scalar_to_json(s.t1), io::scalar_to_json(s.t2), io::scalar_to_json(s.r)}));
    }
    r.results["residual"] = samples;
    r.results["max_abs_residual"] = io::scalar_to_json(res.max_abs);
    r.ok = c.small(res.max_abs);
    for (const auto& audit : sigma_differentiability_audit(dp.scale)) {
        if (audit.flagged()) {
            r.findings.push_back({{"code", "sigma-not-differentiable"},
                                  {"message", "axis " + std::to_string(audit.axis)
                                                  + " has left-dense right-scattered points " + json(scalars(audit.junctions)).dump()}});
        }
    }
    return r;
}

Report cmd_fubini(Context& c)
{
    ProductScale ps = product_scale(c);
    Rect rect = ps.check(rect_from(c, ps));
    SurfaceFn f = surface(c, !c.opt.table.empty() ? c.opt.table : c.opt.fn, "--fn");
    Report r;
    Scalar first = double_integral(ps, f, rect, c.tol);
    Scalar second = double_integral_swapped(ps, f, rect, c.tol);
    Scalar residual = abs(first - second);
    r.results["t2_inner"] = io::scalar_to_json(first);
    r.results["t1_inner"] = io::scalar_to_json(second);
    r.results["residual"] = io::scalar_to_json(residual);
    r.ok = c.small(residual);
    return r;
}

Report cmd_derivation(Context& c)
{
    DoubleProblem dp = double_problem(c);
    SurfaceFn u = surface(c, c.opt.u, "--u");
    SurfaceFn eta = surface(c, c.opt.eta, "--eta");
    ChainReport chain = derivation_chain_check(dp, u, eta, c.tol);
    Report r;
    json steps = json::array();
    for (const auto& s : chain.steps) {
        steps.push_back({{"name", s.name},
                         {"description", s.description},
                         {"lhs", io::scalar_to_json(s.lhs)},
                         {"rhs", io::scalar_to_json(s.rhs)},
                         {"residual", io::scalar_to_json(s.residual)}});
    }
    r.results["steps"] = steps;
    r.results["exact"] = chain.exact;
    r.results["tolerance"] = chain.tolerance;
    r.ok = chain.all_zero();
    return r;
}

Report cmd_counterexample(Context& c)
{
    const std::string& id = c.opt.id;
    Verdict v;
    auto hybrid = [&]() {
        return c.opt.scale.empty() ? std::optional<TimeScale>() : std::optional<TimeScale>(c.scale(c.opt.scale, "--scale"));
    };
    if (id == "nabla-endpoints") {
        v = cx_nabla_endpoints();
    } else if (id == "eta-not-c1") {
        auto T = hybrid();
        if (!T && c.opt.u1.empty() && c.opt.t0.empty()) {
            v = cx_eta_not_c1();
        } else {
            TimeScale S = T ? *T : TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar::ratio(3, 2))});
            v = cx_eta_not_c1(S, c.scalar(c.opt.u1.empty() ? "1/4" : c.opt.u1, "--u1", S.mode()),
                              c.scalar(c.opt.t0.empty() ? "1" : c.opt.t0, "--t0", S.mode()));
        }
    } else if (id == "omega-degenerate") {
        v = cx_omega_degenerate();
    } else if (id == "sigma-discontinuity") {
        auto T = hybrid();
        if (!T && c.opt.t.empty()) {
            v = cx_sigma_discontinuity();
        } else {
            TimeScale S = T ? *T : TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar::ratio(3, 2))});
            v = cx_sigma_discontinuity(S, c.scalar(c.opt.t.empty() ? "1" : c.opt.t, "--t", S.mode()));
        }
    } else {
        throw CLI::ValidationError("counterexample", "unknown id '" + id + "'");
    }
    Report r;
    r.results = to_json(v);
    r.ok = v.confirmed;
    return r;
}

void render_text(const json& j, std::ostream& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto leaf = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [](const json& v) {
        return v.is_array() && std::none_of(v.begin(), v.end(), [](const json& e) { return e.is_structured(); });
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = j.is_object() ? it.key() : "-";
        const json& v = *it;
        if (!v.is_structured()) {
            out << pad << key << ": " << leaf(v) << '\n';
        } else if (flat(v)) {
            out << pad << key << ": ";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out << (i ? ", " : "") << leaf(v[i]);
            }
            out << '\n';
        } else {
            out << pad << key << ":\n";
            render_text(v, out, indent + 1);
        }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"tsvar: calculus and variational problems on time scales"};
    app.name("tsvar");
    app.require_subcommand(1);
    app.fallthrough();

    using Handler = Report (*)(Context&);
    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto common = [&](CLI::App* sub, Handler h) {
        sub->add_option("--scale", opt.scale, "time scale: JSON file or inline JSON");
        sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--tol", opt.tol, "quadrature tolerance");
        sub->add_option("--out", opt.out, "write the report to this file");
        commands.emplace_back(sub, h);
        return sub;
    };

    auto* classify = common(app.add_subcommand("classify", "classify points, jumps and graininess"), cmd_classify);
    classify->add_option("--t", opt.t, "point to classify (default: every piece endpoint)");

    auto* deriv = common(app.add_subcommand("deriv", "delta derivative at a point"), cmd_deriv);
    deriv->add_option("--fn", opt.fn, "polynomial in t");
    deriv->add_option("--table", opt.table, "tabulated function JSON");
    deriv->add_option("--t", opt.t, "point")->required();

    auto* integrate = common(app.add_subcommand("integrate", "delta (or nabla) integral over [a, b)"), cmd_integrate);
    integrate->add_option("--fn", opt.fn, "polynomial in t");
    integrate->add_option("--table", opt.table, "tabulated function JSON");
    integrate->add_option("--a", opt.a)->required();
    integrate->add_option("--b", opt.b)->required();
    integrate->add_flag("--nabla", opt.nabla, "nabla integral over (a, b] on a discrete scale");

    auto* ibp = common(app.add_subcommand("ibp-check", "integration-by-parts residuals"), cmd_ibp);
    ibp->add_option("--fn,--f", opt.fn, "polynomial in t for f");
    ibp->add_option("--table,--f-table", opt.table, "tabulated f");
    ibp->add_option("--g", opt.g, "polynomial in t for g");
    ibp->add_option("--g-table", opt.g_table, "tabulated g");
    ibp->add_option("--a", opt.a)->required();
    ibp->add_option("--b", opt.b)->required();
    ibp->add_option("--form", opt.form, "1 or 2 (default: both)")->check(CLI::Range(0, 2));

    auto* el = common(app.add_subcommand("el-residual", "Euler-Lagrange residual of a candidate"), cmd_el);
    el->add_option("--problem", opt.problem, "problem JSON");
    el->add_option("--y", opt.y, "candidate as tabulated function JSON");
    el->add_flag("--minimize", opt.minimize, "use the brute-force discrete minimizer as candidate");

    auto* kernel = common(app.add_subcommand("flcv-kernel", "fundamental-lemma kernel on a discrete scale"), cmd_kernel);
    kernel->add_option("--variant", opt.variant)->check(CLI::IsMember({"delta", "nabla"}));
    kernel->add_option("--a", opt.a);
    kernel->add_option("--b", opt.b);

    auto* del = common(app.add_subcommand("double-el", "double-integral Euler-Lagrange residual"), cmd_double_el);
    del->add_option("--problem", opt.problem, "double problem JSON");
    del->add_option("--u", opt.u, "candidate surface: table JSON or polynomial in t1, t2");
    del->add_flag("--minimize", opt.minimize, "use the brute-force discrete minimizer as candidate");
    del->add_option("--boundary", opt.boundary, "boundary values for --minimize (polynomial in t1, t2)");

    auto* fub = common(app.add_subcommand("fubini-check", "compare both orders of iterated delta integration"),
                       cmd_fubini);
    fub->add_option("--scale1", opt.scale1);
    fub->add_option("--scale2", opt.scale2);
    fub->add_option("--fn", opt.fn, "polynomial in t1, t2");
    fub->add_option("--table", opt.table, "tabulated surface JSON");
    fub->add_option("--rect", opt.rect, "a1,b1,a2,b2");

    auto* chain = common(app.add_subcommand("derivation-check", "step-by-step residuals of the double first variation"),
                         cmd_derivation);
    chain->add_option("--problem", opt.problem, "double problem JSON");
    chain->add_option("--u", opt.u, "surface: table JSON or polynomial in t1, t2");
    chain->add_option("--eta", opt.eta, "variation: table JSON or polynomial in t1, t2");

    auto* cx = common(app.add_subcommand("counterexample", "reproduce a counterexample verdict"), cmd_counterexample);
    cx->add_option("id", opt.id)
        ->required()
        ->check(CLI::IsMember({"nabla-endpoints", "eta-not-c1", "omega-degenerate", "sigma-discontinuity"}));
    cx->add_option("--u1", opt.u1);
    cx->add_option("--t0", opt.t0);
    cx->add_option("--t", opt.t);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return ExitCode::usage;
    }

    for (const auto& [sub, handler] : commands) {
        if (!sub->parsed()) {
            continue;
        }
        Context ctx(opt);
        Report report;
        try {
            report = handler(ctx);
        } catch (const CLI::Error& e) {
            err << "error: " << sub->get_name() << ": missing or invalid " << e.what() << '\n';
            return ExitCode::usage;
        } catch (const tsvar::Error& e) {
            err << "error: " << sub->get_name() << ": " << e.what() << '\n';
            return ExitCode::usage;
        }

        std::string command = sub->get_name();
        for (const auto& a : args) {
            if (a != sub->get_name()) {
                command += ' ' + a;
            }
        }
        json doc = {{"command", command},
                    {"inputs_digest", fnv1a(command + '\0' + ctx.digest_input)},
                    {"results", report.results},
                    {"findings", report.findings},
                    {"status", report.ok ? "ok" : "fail"}};

        std::ostringstream text;
        if (opt.format == "json") {
            text << doc.dump(2) << '\n';
        } else {
            render_text(doc, text, 0);
        }
        if (opt.out.empty()) {
            out << text.str();
        } else {
            std::ofstream file(opt.out, std::ios::binary);
            if (!(file << text.str())) {
                err << "error: cannot write " << opt.out << '\n';
                return ExitCode::usage;
            }
        }
        return report.ok ? ExitCode::ok : ExitCode::failed;
    }
    err << app.help();
    return ExitCode::usage;
}

} // namespace tsvar::cli
