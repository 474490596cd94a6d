#include <doctest.h>

#include "support/generators.hpp"
#include "tsvar/errors.hpp"
#include "tsvar/product.hpp"

using namespace tsvar;

namespace {

TimeScale hybrid(NumericMode mode = NumericMode::rational)
{
    return TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar(2))}, mode);
}

SurfaceFn surface(std::string_view text)
{
    return SurfaceFn::polynomial(Polynomial::parse(text, {"t1", "t2"}));
}

// Exact minimizer of Σ (u^{Δ1})^2 + (u^{Δ2})^2 on {0..4}^2 with u = t1^2 on the boundary.
std::vector<std::vector<Scalar>> dirichlet_solution()
{
    std::vector<std::vector<Scalar>> u(5, std::vector<Scalar>(5));
    for (long i = 0; i < 5; ++i) {
        for (long j = 0; j < 5; ++j) {
            u[i][j] = Scalar(i * i);
        }
    }
    const Scalar interior[3][3] = {{Scalar::ratio(19, 8), Scalar::ratio(11, 4), Scalar::ratio(19, 8)},
                                   {Scalar::ratio(23, 4), Scalar::ratio(25, 4), Scalar::ratio(23, 4)},
                                   {Scalar::ratio(83, 8), Scalar::ratio(43, 4), Scalar::ratio(83, 8)}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            u[i + 1][j + 1] = interior[i][j];
        }
    }
    return u;
}

SurfaceFn indicator(const ProductScale& ps, std::size_t i, std::size_t j)
{
    std::size_t n1 = ps.first().points().size();
    std::size_t n2 = ps.second().points().size();
    std::vector<std::vector<Scalar>> v(n1, std::vector<Scalar>(n2, Scalar(0)));
    v[i][j] = Scalar(1);
    return SurfaceFn::table(ps, v);
}

} // namespace

TEST_CASE("iterated integrals on the hybrid square")
{
    ProductScale ps(hybrid(NumericMode::floating), hybrid(NumericMode::floating));
    SurfaceFn f = surface("t1*t2");
    CHECK(double_integral(ps, f, ps.full_rect()).to_double() == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(fubini_residual(ps, f, ps.full_rect()).to_double() <= 2e-10);
}

TEST_CASE("rectangles must lie in the product")
{
    ProductScale ps(TimeScale::integers(0, 3), TimeScale::integers(0, 3));
    CHECK_THROWS_AS(ps.check(Rect{Scalar(1), Scalar(1), Scalar(0), Scalar(3)}), DomainError);
    CHECK_THROWS_AS(ps.check(Rect{Scalar(0), Scalar::ratio(1, 2), Scalar(0), Scalar(3)}), DomainError);
    CHECK_THROWS_AS(SurfaceFn::table(ps, {{Scalar(1)}}), DomainError);
}

TEST_CASE("the exact Dirichlet minimizer has zero residual and zero first variation")
{
    ProductScale ps(TimeScale::integers(0, 4), TimeScale::integers(0, 4));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("dirichlet"));
    SurfaceFn u = SurfaceFn::table(ps, dirichlet_solution());
    DoubleResidual r = double_el_residual(dp, u);
    CHECK(r.samples.size() == 9);
    CHECK(r.max_abs.is_zero());
    for (std::size_t i = 1; i < 4; ++i) {
        for (std::size_t j = 1; j < 4; ++j) {
            CHECK(first_variation(dp, u, indicator(ps, i, j)).is_zero());
        }
    }
}

TEST_CASE("brute-force double minimizer matches the exact solution")
{
    ProductScale ps(TimeScale::integers(0, 4), TimeScale::integers(0, 4));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("dirichlet"));
    SurfaceFn u = brute_force_double_minimizer(dp, surface("t1^2"));
    auto exact = dirichlet_solution();
    for (long i = 0; i < 5; ++i) {
        for (long j = 0; j < 5; ++j) {
            CHECK(u(Scalar(i), Scalar(j)).to_double() == doctest::Approx(exact[i][j].to_double()).epsilon(1e-10));
        }
    }
    CHECK(double_el_residual(dp, u).max_abs.to_double() <= 1e-9);
}

TEST_CASE("first variation requires η to vanish on the boundary")
{
    ProductScale ps(TimeScale::integers(0, 3), TimeScale::integers(0, 3));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("full"));
    CHECK_THROWS_AS(first_variation(dp, surface("t1"), surface("t1")), PreconditionError);
    CHECK(first_variation(dp, surface("0"), surface("t1*(t1-3)*t2*(t2-3)")).is_zero());
}

TEST_CASE("σ-differentiability audit and chain refusal")
{
    ProductScale ps(hybrid(), TimeScale::integers(0, 2));
    auto audit = sigma_differentiability_audit(ps);
    REQUIRE(audit.size() == 2);
    CHECK(audit[0].junctions == std::vector<Scalar>{Scalar(1)});
    CHECK_FALSE(audit[1].flagged());
    DoubleProblem dp(ps, DoubleLagrangian::builtin("full"));
    CHECK_THROWS_AS(derivation_chain_check(dp, surface("t1"), surface("0")), PreconditionError);
}

TEST_CASE("derivation chain on an interval axis compares the two ends")
{
    ProductScale ps(TimeScale({Piece::interval(Scalar(0), Scalar(1))}, NumericMode::floating),
                    TimeScale::integers(0, 2, NumericMode::floating));
    DoubleProblem dp(ps, DoubleLagrangian::builtin("full"));
    ChainReport r = derivation_chain_check(dp, surface("t1^2 + t1*t2"), surface("t1*(1-t1)*t2*(2-t2)"));
    CHECK_FALSE(r.exact);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].residual.to_double() <= r.tolerance);
}

TEST_CASE("property: Fubini is exact on discrete rational products")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        ProductScale ps(gen.discrete_scale(2, 7), gen.discrete_scale(2, 7));
        SurfaceFn f = SurfaceFn::table(ps, gen.grid_values(ps.first().points().size(), ps.second().points().size()));
        CHECK(fubini_residual(ps, f, ps.full_rect()).is_zero());
    }
}

TEST_CASE("property: every derivation step is exact on random discrete products")
{
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        ProductScale ps(gen.discrete_scale(4, 6), gen.discrete_scale(4, 6));
        std::size_t n1 = ps.first().points().size();
        std::size_t n2 = ps.second().points().size();
        SurfaceFn u = SurfaceFn::table(ps, gen.grid_values(n1, n2));
        SurfaceFn eta = SurfaceFn::table(ps, gen.interior_values(n1, n2));
        DoubleProblem dp(ps, DoubleLagrangian::builtin("full"));
        ChainReport r = derivation_chain_check(dp, u, eta);
        CHECK(r.exact);
        CHECK(r.steps.size() == 18);
        for (const auto& s : r.steps) {
            CAPTURE(s.name);
            CHECK(s.residual.is_zero());
        }
    }
}

TEST_CASE("property: the double minimizer is stationary against an η basis")
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        ProductScale ps(gen.discrete_scale(3, 5), gen.discrete_scale(3, 5));
        DoubleProblem dp(ps, DoubleLagrangian::builtin(gen.coin() ? "full" : "dirichlet"));
        SurfaceFn u = brute_force_double_minimizer(dp, surface("t1^2 - t2"));
        CHECK(double_el_residual(dp, u).max_abs.to_double() <= 1e-9);
        std::size_t n1 = ps.first().points().size();
        std::size_t n2 = ps.second().points().size();
        for (std::size_t i = 1; i + 1 < n1; ++i) {
            for (std::size_t j = 1; j + 1 < n2; ++j) {
                CHECK(abs(first_variation(dp, u, indicator(ps, i, j))).to_double() <= 1e-9);
            }
        }
    }
}
