#pragma once

// Seeded generators for property tests. Every draw is reproducible from the
// seed printed by the failing check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tsvar/polynomial.hpp"
#include "tsvar/product.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"

namespace tsvar::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    /// p/q with |p| ≤ num_max and 1 ≤ q ≤ den_max.
    Scalar rational(long num_max = 9, long den_max = 6)
    {
        return Scalar::ratio(integer(-num_max, num_max), integer(1, den_max));
    }

    /// Strictly positive gap p/q ≤ 2.
    Scalar gap()
    {
        long q = integer(1, 4);
        return Scalar::ratio(integer(1, 2 * q), q);
    }

    /// n points, n drawn from [n_min, n_max], starting in [-3, 3].
    TimeScale discrete_scale(std::size_t n_min, std::size_t n_max)
    {
        std::size_t n = static_cast<std::size_t>(integer(static_cast<long>(n_min), static_cast<long>(n_max)));
        std::vector<Scalar> pts{Scalar(integer(-3, 3))};
        while (pts.size() < n) {
            pts.push_back(pts.back() + gap());
        }
        return TimeScale::discrete(pts);
    }

    /// Intervals and isolated points, alternating with gaps.
    TimeScale hybrid_scale(NumericMode mode = NumericMode::rational)
    {
        std::vector<Piece> pieces;
        Scalar cursor(integer(-2, 2));
        std::size_t n = static_cast<std::size_t>(integer(2, 5));
        for (std::size_t i = 0; i < n; ++i) {
            if (coin()) {
                Scalar hi = cursor + gap();
                pieces.push_back(Piece::interval(cursor, hi));
                cursor = hi;
            } else {
                pieces.push_back(Piece::point(cursor));
            }
            cursor = cursor + gap();
        }
        return TimeScale(pieces, mode);
    }

    /// Random polynomial in `var` with rational coefficients.
    Polynomial polynomial(const std::string& var, unsigned degree)
    {
        Polynomial p = Polynomial::constant({var}, rational().exact());
        Polynomial x = Polynomial::variable({var}, 0);
        Polynomial power = x;
        for (unsigned k = 1; k <= degree; ++k) {
            Polynomial term = power;
            term *= rational().exact();
            p += term;
            power *= x;
        }
        return p;
    }

    /// Tabulation of a random polynomial on a discrete scale.
    ScaleFn polynomial_table(const TimeScale& T, unsigned degree)
    {
        Polynomial p = polynomial("t", degree);
        std::vector<std::pair<Scalar, Scalar>> rows;
        for (const auto& t : T.points()) {
            rows.emplace_back(t, p({t}));
        }
        return ScaleFn::table(T, rows);
    }

    std::vector<std::vector<Scalar>> grid_values(std::size_t n1, std::size_t n2)
    {
        std::vector<std::vector<Scalar>> v(n1, std::vector<Scalar>(n2));
        for (auto& row : v) {
            for (auto& x : row) {
                x = rational();
            }
        }
        return v;
    }

    /// Random table vanishing on the border of the point grid.
    std::vector<std::vector<Scalar>> interior_values(std::size_t n1, std::size_t n2)
    {
        auto v = grid_values(n1, n2);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                if (i == 0 || j == 0 || i + 1 == n1 || j + 1 == n2) {
                    v[i][j] = Scalar(0);
                }
            }
        }
        return v;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace tsvar::testing
