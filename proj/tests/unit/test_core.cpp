#include <doctest.h>

#include <algorithm>

#include "support/generators.hpp"
#include "tsvar/errors.hpp"
#include "tsvar/polynomial.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"

using namespace tsvar;

namespace {

TimeScale hybrid()
{
    return TimeScale({Piece::interval(Scalar(0), Scalar(1)), Piece::point(Scalar::ratio(3, 2))});
}

} // namespace

TEST_CASE("scalar parsing and printing")
{
    CHECK(Scalar::parse("3/6").str() == "1/2");
    CHECK(Scalar::parse("-0.25") == Scalar::ratio(-1, 4));
    CHECK(Scalar::parse("1.5e-3") == Scalar::ratio(3, 2000));
    CHECK(Scalar::parse("7").str() == "7");
    CHECK(Scalar::decimal(0.1) == Scalar::ratio(1, 10));
    CHECK(Scalar(0.1).str() == "0.1");
    CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
    CHECK_THROWS_AS(Scalar::parse("abc"), Error);
}

TEST_CASE("scalar arithmetic keeps exactness until a double enters")
{
    Scalar a = Scalar::ratio(1, 3);
    CHECK((a + a + a) == Scalar(1));
    CHECK((a * Scalar(3)).is_exact());
    CHECK_FALSE((a + Scalar(0.5)).is_exact());
    CHECK_THROWS_AS(a / Scalar(0), DomainError);
    CHECK(Scalar(0.5) == Scalar::ratio(1, 2));
    CHECK(Scalar(0.1) != Scalar::ratio(1, 10));
    CHECK(pow(Scalar::ratio(-1, 2), 3) == Scalar::ratio(-1, 8));
    CHECK(abs(Scalar(-2)) == Scalar(2));
}

TEST_CASE("numeric mode names")
{
    CHECK(to_string(NumericMode::rational) == "rational");
    CHECK(to_string(NumericMode::floating) == "float");
    CHECK(parse_numeric_mode("float") == NumericMode::floating);
    CHECK_THROWS(parse_numeric_mode("decimal"));
}

TEST_CASE("jump operators on an interval followed by a point")
{
    TimeScale T = hybrid();
    CHECK(T.sigma(Scalar::ratio(1, 2)) == Scalar::ratio(1, 2));
    CHECK(T.sigma(Scalar(1)) == Scalar::ratio(3, 2));
    CHECK(T.sigma(Scalar::ratio(3, 2)) == Scalar::ratio(3, 2));
    CHECK(T.rho(Scalar::ratio(3, 2)) == Scalar(1));
    CHECK(T.rho(Scalar(0)) == Scalar(0));
    CHECK(T.mu(Scalar(1)) == Scalar::ratio(1, 2));
    CHECK(T.nu(Scalar::ratio(3, 2)) == Scalar::ratio(1, 2));
    CHECK(T.mu(Scalar::ratio(1, 3)).is_zero());

    PointClass junction = T.classify(Scalar(1));
    CHECK(junction.left_dense);
    CHECK(junction.right_scattered());
    CHECK(T.is_dense_junction(Scalar(1)));
    CHECK_FALSE(T.is_dense_junction(Scalar(0)));

    PointClass top = T.classify(Scalar::ratio(3, 2));
    CHECK(top.left_scattered());
    CHECK(top.is_max);
    CHECK_THROWS_AS(T.sigma(Scalar::ratio(5, 4)), DomainError);
}

TEST_CASE("truncations drop left-scattered maxima")
{
    TimeScale Z = TimeScale::integers(0, 5);
    CHECK(Z.truncate_k().points().back() == Scalar(4));
    CHECK(Z.truncate_k2().points().back() == Scalar(3));
    TimeScale T = hybrid();
    CHECK(T.truncate_k() == TimeScale({Piece::interval(Scalar(0), Scalar(1))}));
    CHECK(T.truncate_k().truncate_k() == T.truncate_k());
}

TEST_CASE("canonical form merges and sorts")
{
    TimeScale T({Piece::point(Scalar(3)), Piece::interval(Scalar(0), Scalar(1)), Piece::interval(Scalar::ratio(1, 2), Scalar(2)),
                 Piece::point(Scalar(2))});
    REQUIRE(T.pieces().size() == 2);
    CHECK(T.str() == "[0,2] ∪ {3}");
    CHECK_THROWS_AS(TimeScale(std::vector<Piece>{}), DomainError);
    CHECK_THROWS_AS(TimeScale({Piece::point(Scalar(std::nan("")))}), DomainError);
}

TEST_CASE("float mode snaps within eps_pt")
{
    TimeScale T({Piece::point(Scalar(0)), Piece::point(Scalar(1))}, NumericMode::floating, 1e-9);
    CHECK(T.sigma(Scalar(1e-12)) == Scalar(1.0));
    CHECK_THROWS_AS(T.sigma(Scalar(0.5)), DomainError);
}

TEST_CASE("restrict and grid")
{
    TimeScale T = hybrid();
    CHECK(T.restrict(Scalar::ratio(1, 2), Scalar::ratio(3, 2)).str() == "[1/2,1] ∪ {3/2}");
    std::vector<Scalar> g = T.grid(4);
    CHECK(g.size() == 7);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK_FALSE(T.is_discrete());
    CHECK(T.is_discrete_on(Scalar(1), Scalar::ratio(3, 2)));
    CHECK_THROWS_AS(T.points(), UnsupportedError);
}

TEST_CASE("polynomial parsing, evaluation and derivatives")
{
    Polynomial p = Polynomial::parse("3*t^2 - (t - 1)/2 + 1/4", {"t"});
    CHECK(p({Scalar(2)}) == Scalar::ratio(47, 4));
    CHECK(p.derivative("t")({Scalar(2)}) == Scalar::ratio(23, 2));
    CHECK(Polynomial::parse(p.str(), {"t"}) == p);
    Polynomial q = Polynomial::parse("t1*t2 + y0^2", {"t1", "t2", "y0"});
    CHECK(q.degree() == 2);
    CHECK(q.derivative("y0")({Scalar(1), Scalar(2), Scalar(5)}) == Scalar(10));
    CHECK_THROWS_AS(Polynomial::parse("t^", {"t"}), ParseError);
    CHECK_THROWS_AS(Polynomial::parse("x + 1", {"t"}), ParseError);
}

TEST_CASE("tabulated functions")
{
    TimeScale Z = TimeScale::integers(1, 3);
    ScaleFn f = ScaleFn::table(Z, {{Scalar(3), Scalar(9)}, {Scalar(1), Scalar(1)}, {Scalar(2), Scalar(4)}});
    CHECK(f(Scalar(2)) == Scalar(4));
    CHECK_THROWS_AS(f(Scalar(4)), DomainError);
    CHECK_THROWS_AS(ScaleFn::table(Z, {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(2)}}), DomainError);
    CHECK_THROWS_AS(ScaleFn::table(hybrid(), {{Scalar(0), Scalar(1)}}), UnsupportedError);
    CHECK((f * f)(Scalar(3)) == Scalar(81));
}

TEST_CASE("compose_sigma keeps the dense-side left limit")
{
    TimeScale T = hybrid();
    ScaleFn f = ScaleFn::identity();
    ScaleFn fs = compose_sigma(T, f);
    CHECK(fs(Scalar(1)) == Scalar::ratio(3, 2));
    CHECK(fs.left_limit(Scalar(1)) == Scalar(1));
    CHECK(fs(Scalar::ratio(1, 2)) == Scalar::ratio(1, 2));
}

TEST_CASE("property: jump operators on random discrete scales")
{
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.discrete_scale(1, 12);
        std::vector<Scalar> pts = T.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Scalar& t = pts[i];
            Scalar s = T.sigma(t);
            Scalar r = T.rho(t);
            CHECK(T.contains(s));
            CHECK(T.contains(r));
            CHECK(Scalar(0) <= T.mu(t));
            // Brute-force inf/sup over the point set.
            CHECK(s == (i + 1 < pts.size() ? pts[i + 1] : t));
            CHECK(r == (i > 0 ? pts[i - 1] : t));
            if (i + 1 < pts.size()) {
                CHECK(T.rho(s) == t);
            }
            if (i > 0) {
                CHECK(T.sigma(r) == t);
            }
            PointClass c = T.classify(t);
            CHECK(c.right_dense == (i + 1 == pts.size()));
            CHECK(c.left_dense == (i == 0));
            CHECK(c.is_min == (i == 0));
            CHECK(c.is_max == (i + 1 == pts.size()));
        }
    }
}

TEST_CASE("property: jump operators on random hybrid scales")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.hybrid_scale();
        for (const auto& t : T.grid(5)) {
            Scalar s = T.sigma(t);
            Scalar r = T.rho(t);
            CHECK(T.contains(s));
            CHECK(T.contains(r));
            CHECK(t <= s);
            CHECK(r <= t);
            CHECK(T.rho(s) <= t);
            CHECK(t <= T.sigma(r));
        }
    }
}

TEST_CASE("property: canonicalization is idempotent and order-free")
{
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        std::vector<Piece> pieces;
        std::size_t n = static_cast<std::size_t>(gen.integer(1, 7));
        for (std::size_t i = 0; i < n; ++i) {
            Scalar lo = gen.rational(6, 3);
            pieces.push_back(gen.coin() ? Piece::point(lo) : Piece::interval(lo, lo + gen.gap()));
        }
        std::vector<Piece> once = TimeScale::canonicalize(pieces);
        CHECK(TimeScale::canonicalize(once) == once);
        std::shuffle(pieces.begin(), pieces.end(), gen.engine());
        CHECK(TimeScale::canonicalize(pieces) == once);
        for (std::size_t i = 0; i + 1 < once.size(); ++i) {
            CHECK(once[i].hi < once[i + 1].lo);
        }
    }
}

TEST_CASE("property: σ is not left-continuous at a dense junction")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        CAPTURE(seed);
        testing::Gen gen(seed);
        TimeScale T = gen.hybrid_scale();
        for (const auto& p : T.pieces()) {
            if (p.is_point() || p.hi == T.max()) {
                continue;
            }
            Scalar d = p.hi - p.lo;
            for (long n = 1; n <= 20; ++n) {
                Scalar s = p.hi - d / Scalar(1L << n);
                CHECK(T.sigma(s) == s);
            }
            CHECK(p.hi < T.sigma(p.hi));
        }
    }
}
