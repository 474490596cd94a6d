#include <doctest.h>

#include "support/generators.hpp"
#include "tsvar/errors.hpp"
#include "tsvar/variational.hpp"

using namespace tsvar;

namespace {

ScaleFn tabulate(const TimeScale& T, const std::vector<Scalar>& values)
{
    std::vector<std::pair<Scalar, Scalar>> rows;
    std::vector<Scalar> pts = T.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rows.emplace_back(pts[i], values[i]);
    }
    return ScaleFn::table(T, rows);
}

std::vector<Scalar> as_scalars(std::initializer_list<long> xs)
{
    return {xs.begin(), xs.end()};
}

} // namespace

TEST_CASE("built-in Lagrangians and their partials")
{
    Lagrangian L = Lagrangian::builtin("v2+y2");
    CHECK(L.value(Scalar(0), Scalar(2), Scalar(3)) == Scalar(13));
    CHECK(L.d_y(Scalar(0), Scalar(2), Scalar(3)) == Scalar(4));
    CHECK(L.d_v(Scalar(0), Scalar(2), Scalar(3)) == Scalar(6));
    CHECK(Lagrangian::builtin("harmonic").d_y(Scalar(0), Scalar(2), Scalar(3)) == Scalar(-4));
    CHECK_THROWS_AS(Lagrangian::builtin("cubic"), ParseError);

    Lagrangian C = Lagrangian::from_closure(
        [](const Scalar&, const Scalar& y, const Scalar& v) { return v * v + y * y * y; }, "v^2 + y^3");
    CHECK(C.d_y(Scalar(0.0), Scalar(2.0), Scalar(1.0)).to_double() == doctest::Approx(12.0).epsilon(1e-8));
    CHECK(C.d_v(Scalar(0.0), Scalar(2.0), Scalar(1.0)).to_double() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("problem construction validates the endpoints")
{
    TimeScale Z = TimeScale::integers(0, 4);
    CHECK_THROWS_AS(VariationalProblem(Z, Lagrangian::builtin("v2"), Scalar(3), Scalar(1), Scalar(0), Scalar(0)),
                    DomainError);
    CHECK_THROWS_AS(VariationalProblem(Z, Lagrangian::builtin("v2"), Scalar::ratio(1, 2), Scalar(3), Scalar(0), Scalar(0)),
                    DomainError);
}

TEST_CASE("Euler-Lagrange residual of the exact discrete minimizer is zero")
{
    // y = (0, 1/21, 1/7, 8/21, 1) minimizes Σ (y^Δ)^2 + (y^σ)^2 on {0..4}.
    TimeScale Z = TimeScale::integers(0, 4);
    VariationalProblem p(Z, Lagrangian::builtin("v2+y2"), Scalar(0), Scalar(4), Scalar(0), Scalar(1));
    ScaleFn y = tabulate(Z, {Scalar(0), Scalar::ratio(1, 21), Scalar::ratio(1, 7), Scalar::ratio(8, 21), Scalar(1)});
    ELReport r = el_residual(p, y);
    CHECK(r.max_abs_residual.is_exact());
    CHECK(r.max_abs_residual.is_zero());
    REQUIRE(r.residual.size() == 4);
    CHECK(r.residual.back().first == Scalar(3));
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].code == "left-scattered-endpoint");

    ScaleFn wrong = tabulate(Z, as_scalars({0, 0, 0, 0, 1}));
    CHECK_FALSE(el_residual(p, wrong).max_abs_residual.is_zero());
}

TEST_CASE("brute-force minimizer reproduces the exact minimizer")
{
    TimeScale Z = TimeScale::integers(0, 4);
    VariationalProblem p(Z, Lagrangian::builtin("v2+y2"), Scalar(0), Scalar(4), Scalar(0), Scalar(1));
    ScaleFn y = brute_force_minimizer(p);
    CHECK(y(Scalar(2)).to_double() == doctest::Approx(1.0 / 7.0).epsilon(1e-10));
    CHECK(y(Scalar(4)) == Scalar(1));
    CHECK(el_residual(p, y).max_abs_residual.to_double() <= 1e-9);
}

TEST_CASE("el_residual on a dense scale reaches b")
{
    TimeScale T({Piece::interval(Scalar(0), Scalar(1))}, NumericMode::floating);
    VariationalProblem p(T, Lagrangian::builtin("v2"), Scalar(0), Scalar(1), Scalar(0), Scalar(1));
    ELReport r = el_residual(p, ScaleFn::identity());
    CHECK(r.max_abs_residual.to_double() <= 1e-9);
    CHECK(r.findings.at(0).code == "no-gap");
    CHECK(r.c_hat.to_double() == doctest::Approx(2.0));
}

TEST_CASE("el_residual reports an undefined candidate")
{
    TimeScale Z = TimeScale::integers(0, 4);
    VariationalProblem p(Z, Lagrangian::builtin("v2"), Scalar(0), Scalar(4), Scalar(0), Scalar(1));
    ScaleFn short_y = tabulate(TimeScale::integers(0, 2), as_scalars({0, 1, 2}));
    CHECK_THROWS_AS(el_residual(p, short_y), DomainError);
}

TEST_CASE("fundamental-lemma kernels")
{
    KernelReport delta = fl_kernel(TimeScale::integers(0, 5), KernelVariant::delta, Scalar(0), Scalar(5));
    CHECK(delta.constrained == as_scalars({0, 1, 2, 3}));
    CHECK(delta.unconstrained == as_scalars({4}));
    CHECK(delta.rank == 4);
    CHECK(delta.claim_holds);

    KernelReport nabla = fl_kernel(TimeScale::integers(1, 5), KernelVariant::nabla, Scalar(1), Scalar(5));
    CHECK(nabla.constrained == as_scalars({2, 3, 4}));
    CHECK(nabla.unconstrained == as_scalars({1, 5}));
    CHECK(nabla.rank == 3);
    CHECK_FALSE(nabla.claim_holds);

    KernelReport tiny = fl_kernel(TimeScale::integers(0, 1), KernelVariant::delta, Scalar(0), Scalar(1));
    CHECK(tiny.constrained.empty());
    CHECK(tiny.unconstrained == as_scalars({0}));
    CHECK(tiny.rank == 0);

    TimeScale hybrid({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar(2))});
    CHECK_THROWS_AS(fl_kernel(hybrid, KernelVariant::delta, Scalar(0), Scalar(2)), UnsupportedError);
    CHECK(parse_kernel_variant("nabla") == KernelVariant::nabla);
}

TEST_CASE("property: kernels on random discrete scales")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.discrete_scale(3, 9);
        const Scalar a = T.min();
        const Scalar b = T.max();
        KernelReport delta = fl_kernel(T, KernelVariant::delta, a, b);
        CHECK(delta.unconstrained == std::vector<Scalar>{T.rho(b)});
        CHECK(delta.rank == delta.constrained.size());
        CHECK(delta.claim_holds);
        KernelReport nabla = fl_kernel(T, KernelVariant::nabla, a, b);
        CHECK(nabla.unconstrained == std::vector<Scalar>{a, b});
        CHECK(nabla.rank == nabla.constrained.size());
    }
}

TEST_CASE("property: brute-force minimizers of convex problems satisfy Euler-Lagrange")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.discrete_scale(3, 12);
        // α v^2 + β y^2 + γ t v + δ y with α > 0, β ≥ 0.
        std::string text = Scalar::ratio(gen.integer(1, 6), 2).str() + "*v^2 + " + Scalar::ratio(gen.integer(0, 4), 2).str()
                           + "*y^2 + " + gen.rational().str() + "*t*v + " + gen.rational().str() + "*y";
        CAPTURE(text);
        VariationalProblem p(T, Lagrangian::from_polynomial(Polynomial::parse(text, {"t", "y", "v"})), T.min(), T.max(),
                             gen.rational(), gen.rational());
        ScaleFn y = brute_force_minimizer(p);
        CHECK(el_residual(p, y).max_abs_residual.to_double() <= 1e-9);
    }
}

TEST_CASE("property: adding a function of t alone leaves the residual unchanged")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.discrete_scale(3, 8);
        Polynomial base = Polynomial::parse("v^2 + y^2 + t*v", {"t", "y", "v"});
        Polynomial shifted = base;
        Polynomial g = gen.polynomial("t", 3);
        shifted += Polynomial::parse(g.str(), {"t", "y", "v"});
        VariationalProblem p1(T, Lagrangian::from_polynomial(base), T.min(), T.max(), Scalar(0), Scalar(1));
        VariationalProblem p2(T, Lagrangian::from_polynomial(shifted), T.min(), T.max(), Scalar(0), Scalar(1));
        ScaleFn y = gen.polynomial_table(T, 3);
        ELReport r1 = el_residual(p1, y);
        ELReport r2 = el_residual(p2, y);
        CHECK(r1.c_hat == r2.c_hat);
        CHECK(r1.residual == r2.residual);
    }
}
