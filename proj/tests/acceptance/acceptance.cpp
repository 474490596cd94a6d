// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support/generators.hpp"
#include "tsvar/calculus.hpp"
#include "tsvar/cli.hpp"
#include "tsvar/counterexamples.hpp"
#include "tsvar/product.hpp"
#include "tsvar/variational.hpp"

using namespace tsvar;
using nlohmann::json;

namespace {

// Independent oracle values for the hybrid η example.
constexpr double eta_left_limit = -0.1875;
constexpr double eta_formula_value = -0.28125;
constexpr double eta_jump = 0.09375;

struct Check {
    bool ok = true;
    std::string why;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

struct CliResult {
    int code;
    std::string out;
};

CliResult cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str()};
}

std::string fixture(const std::string& name)
{
    return std::string(TSVAR_FIXTURES_DIR) + "/" + name;
}

std::string random_quadratic_lagrangian(testing::Gen& gen)
{
    // Random quadratic form in (y0, y1, y2) plus t-dependent linear terms.
    const char* vars[] = {"y0", "y1", "y2"};
    std::string text = "0";
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            text += " + " + gen.rational(5, 3).str() + "*" + vars[i] + "*" + vars[j];
        }
        text += " + " + gen.rational(5, 3).str() + "*t1*" + vars[i];
        text += " + " + gen.rational(5, 3).str() + "*t2*" + vars[i];
    }
    return text;
}

Check criterion1()
{
    Check c;
    CliResult r = cli({"counterexample", "nabla-endpoints", "--format", "json"});
    c.require(r.code == 0, "tsvar counterexample nabla-endpoints exited with " + std::to_string(r.code));
    Verdict v = cx_nabla_endpoints();
    c.require(v.confirmed, "verdict not confirmed");
    for (const auto& d : v.details) {
        if (d.name.rfind("∇-integral", 0) == 0) {
            c.require(d.value == "0", d.name + " = " + d.value);
        }
    }
    const json& f = v.witness.at("f");
    c.require(f.front() == "1" && f.back() == "1", "f(1), f(5) are not both 1");
    return c;
}

Check criterion2()
{
    Check c;
    KernelReport d = fl_kernel(TimeScale::integers(0, 5), KernelVariant::delta, Scalar(0), Scalar(5));
    c.require(d.unconstrained == std::vector<Scalar>{Scalar(4)}, "delta kernel unconstrained set is not {4}");
    c.require(d.constrained == std::vector<Scalar>{0, 1, 2, 3}, "delta kernel constrained set is not {0,1,2,3}");
    c.require(d.claimed_domain == d.constrained, "forced set differs from [0,5]^{k²}");
    KernelReport n = fl_kernel(TimeScale::integers(1, 5), KernelVariant::nabla, Scalar(1), Scalar(5));
    c.require(n.unconstrained == std::vector<Scalar>{Scalar(1), Scalar(5)}, "nabla kernel unconstrained set is not {1,5}");
    return c;
}

Check criterion3()
{
    Check c;
    Verdict v = cx_eta_not_c1();
    double left = v.witness.at("left_limit").get<double>();
    double jump = v.witness.at("jump").get<double>();
    double value = Scalar::parse(v.witness.at("formula_at_t0").get<std::string>()).to_double();
    c.require(v.confirmed, "verdict not confirmed");
    c.require(std::abs(left - eta_left_limit) <= 1e-9, "left limit " + format_double(left));
    c.require(value == eta_formula_value, "formula value " + format_double(value));
    c.require(std::abs(jump - eta_jump) <= 1e-9, "jump " + format_double(jump));
    return c;
}

Check criterion4()
{
    Check c;
    CliResult r = cli({"counterexample", "omega-degenerate"});
    c.require(r.code == 0, "tsvar counterexample omega-degenerate exited with " + std::to_string(r.code));
    testing::Gen gen(4);
    for (int k = 0; k < 5; ++k) {
        Verdict v = cx_omega_degenerate(gen.grid_values(6, 6));
        c.require(v.confirmed, "verdict not confirmed for a random M");
        c.require(v.witness.at("integral") == "0", "integral is " + v.witness.at("integral").dump());
    }
    return c;
}

Check criterion5()
{
    Check c;
    testing::Gen gen(5);
    for (int s = 0; s < 20; ++s) {
        ProductScale ps(gen.discrete_scale(4, 6), gen.discrete_scale(4, 6));
        std::size_t n1 = ps.first().points().size();
        std::size_t n2 = ps.second().points().size();
        SurfaceFn u = SurfaceFn::table(ps, gen.grid_values(n1, n2));
        SurfaceFn eta = SurfaceFn::table(ps, gen.interior_values(n1, n2));
        std::vector<DoubleLagrangian> Ls{DoubleLagrangian::builtin("full")};
        for (int k = 0; k < 5; ++k) {
            Ls.push_back(DoubleLagrangian::from_polynomial(
                Polynomial::parse(random_quadratic_lagrangian(gen), {"t1", "t2", "y0", "y1", "y2"})));
        }
        for (const auto& L : Ls) {
            ChainReport r = derivation_chain_check(DoubleProblem(ps, L), u, eta);
            c.require(r.exact, "chain check was not exact");
            for (const auto& step : r.steps) {
                c.require(step.residual.is_exact() && step.residual.is_zero(),
                          "scale " + std::to_string(s) + ", L = " + L.description + ": step " + step.name
                              + " residual " + step.residual.str());
            }
        }
    }
    return c;
}

Check criterion6()
{
    Check c;
    testing::Gen gen(6);
    for (int s = 0; s < 50; ++s) {
        TimeScale T = gen.discrete_scale(2, 12);
        ScaleFn f = gen.polynomial_table(T, 3);
        ScaleFn g = gen.polynomial_table(T, 3);
        std::vector<Scalar> pts = T.points();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const Scalar& t = pts[i];
            c.require(simple_useful_check(T, f, t).is_zero(), "simple useful formula at " + t.str());
            ProductRuleResidual pr = product_rule_residual(T, f, g, t);
            c.require(pr.sigma_on_f.is_zero() && pr.sigma_on_g.is_zero(), "product rule at " + t.str());
            c.require(delta_integral(T, f, t, T.sigma(t)) == T.mu(t) * f(t), "single-gap integral at " + t.str());
        }
        for (IbpForm form : {IbpForm::sigma_on_f, IbpForm::sigma_on_g}) {
            c.require(ibp_residual(T, f, g, T.min(), T.max(), form).is_zero(), "integration by parts on " + T.str());
        }
    }
    return c;
}

Check criterion7()
{
    Check c;
    testing::Gen gen(7);
    for (int s = 0; s < 10; ++s) {
        TimeScale T = gen.discrete_scale(3, 12);
        std::string text = Scalar::ratio(gen.integer(1, 6), 2).str() + "*v^2 + " + Scalar::ratio(gen.integer(0, 4), 2).str()
                           + "*y^2 + " + gen.rational().str() + "*t*v + " + gen.rational().str() + "*y";
        VariationalProblem p(T, Lagrangian::from_polynomial(Polynomial::parse(text, {"t", "y", "v"})), T.min(), T.max(),
                             gen.rational(), gen.rational());
        double r = el_residual(p, brute_force_minimizer(p)).max_abs_residual.to_double();
        c.require(r <= 1e-9, "1-D residual " + format_double(r) + " for L = " + text);
    }
    ProductScale ps(TimeScale::integers(0, 4), TimeScale::integers(0, 4));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("dirichlet"));
    SurfaceFn u = brute_force_double_minimizer(dp, SurfaceFn::polynomial(Polynomial::parse("t1^2", {"t1", "t2"})));
    double r = double_el_residual(dp, u).max_abs.to_double();
    c.require(r <= 1e-9, "double residual " + format_double(r));
    for (std::size_t i = 1; i < 4; ++i) {
        for (std::size_t j = 1; j < 4; ++j) {
            std::vector<std::vector<Scalar>> v(5, std::vector<Scalar>(5, Scalar(0)));
            v[i][j] = Scalar(1);
            double fv = abs(first_variation(dp, u, SurfaceFn::table(ps, v))).to_double();
            c.require(fv <= 1e-9, "first variation " + format_double(fv));
        }
    }
    return c;
}

Check criterion8()
{
    Check c;
    testing::Gen gen(8);
    for (int s = 0; s < 20; ++s) {
        ProductScale ps(gen.discrete_scale(2, 8), gen.discrete_scale(2, 8));
        SurfaceFn f = SurfaceFn::table(ps, gen.grid_values(ps.first().points().size(), ps.second().points().size()));
        c.require(fubini_residual(ps, f, ps.full_rect()).is_zero(), "discrete Fubini residual nonzero");
    }
    TimeScale H({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar(2))}, NumericMode::floating);
    ProductScale hybrid(H, H);
    double r = fubini_residual(hybrid, SurfaceFn::polynomial(Polynomial::parse("t1*t2", {"t1", "t2"})),
                               hybrid.full_rect())
                   .to_double();
    c.require(r <= 2e-10, "hybrid Fubini residual " + format_double(r));
    return c;
}

Check criterion9()
{
    Check c;
    testing::Gen gen(9);
    std::vector<Polynomial> set{Polynomial::parse("t^2", {"t"}), Polynomial::parse("t^3", {"t"}),
                                Polynomial::parse("t^4 - 2*t + 1", {"t"}), Polynomial::parse("(t - 1/3)^5", {"t"})};
    for (int k = 0; k < 3; ++k) {
        set.push_back(gen.polynomial("t", 5));
    }
    TimeScale T({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar(2))}, NumericMode::floating);
    for (int i = 0; i < 100; ++i) {
        const Polynomial& p = set[static_cast<std::size_t>(i) % set.size()];
        Scalar t(gen.real(0.0, 1.0));
        if (!(t < Scalar(1))) {
            continue;
        }
        DerivResult d = delta_deriv(T, ScaleFn::polynomial(p), t);
        double exact = p.derivative("t")({t}).to_double();
        double diff = std::abs(d.value.to_double() - exact);
        c.require(d.method == DerivMethod::numeric_limit, "exact quotient at a right-dense point");
        c.require(diff <= std::max(1e-8, d.est_error),
                  "at t = " + t.str() + " for " + p.str() + ": |diff| = " + format_double(diff));
    }
    return c;
}

Check criterion10()
{
    Check c;
    std::vector<std::vector<std::string>> commands{
        {"counterexample", "nabla-endpoints"},
        {"classify", "--scale", fixture("hybrid.json")},
        {"integrate", "--scale", fixture("z5.json"), "--fn", "t", "--a", "1", "--b", "3"},
        {"el-residual", "--problem", fixture("problem_z5.json"), "--minimize"},
        {"double-el", "--problem", fixture("dirichlet_5x5.json"), "--minimize", "--boundary", "t1^2"},
    };
    for (const auto& cmd : commands) {
        CliResult a = cli(cmd);
        CliResult b = cli(cmd);
        c.require(a.code == 0 && a.out == b.out, "tsvar " + cmd[0] + " is not byte-stable");
    }

    CliResult cls = cli({"classify", "--scale", fixture("hybrid.json")});
    json scale = json::parse(cls.out).at("results").at("scale");
    CliResult again = cli({"classify", "--scale", scale.dump()});
    c.require(again.code == 0 && json::parse(again.out).at("results").at("scale") == scale, "scale did not round-trip");

    CliResult m = cli({"el-residual", "--problem", fixture("problem_z5.json"), "--minimize"});
    auto path = std::filesystem::temp_directory_path() / "tsvar_acceptance_minimizer.json";
    std::ofstream(path) << json::parse(m.out).at("results").at("minimizer").dump();
    CliResult reload = cli({"el-residual", "--problem", fixture("problem_z5.json"), "--y", path.string()});
    c.require(reload.code == 0, "emitted table did not reload");
    std::filesystem::remove(path);

    for (const char* name : {"malformed_syntax.json", "malformed_value.json", "malformed_schema.json"}) {
        CliResult r = cli({"classify", "--scale", fixture(name)});
        c.require(r.code == 2, std::string(name) + " exited with " + std::to_string(r.code));
    }
    c.require(cli({"bogus"}).code == 2, "unknown subcommand did not exit with 2");
    return c;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "nabla counterexample", 1.0, criterion1},
        {2, "fundamental-lemma kernels", 1.0, criterion2},
        {3, "eta not C1 at the junction", 1.0, criterion3},
        {4, "degenerate Omega", 1.0, criterion4},
        {5, "derivation chain, exact", 30.0, criterion5},
        {6, "identity suite", 30.0, criterion6},
        {7, "Euler-Lagrange consistency", 60.0, criterion7},
        {8, "Fubini", 10.0, criterion8},
        {9, "numeric derivative", 10.0, criterion9},
        {10, "CLI determinism and round-trip", 60.0, criterion10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = c.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.why = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (result.ok && elapsed > c.budget_s) {
            result.ok = false;
            result.why = "over the " + format_double(c.budget_s) + " s budget";
        }
        std::printf("[%s] criterion %2d  %-32s %8.3f s%s%s\n", result.ok ? "PASS" : "FAIL", c.id, c.name, elapsed,
                    result.ok ? "" : "  ", result.why.c_str());
        failures += result.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
