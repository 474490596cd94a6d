#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "tsvar/errors.hpp"

namespace tsvar::detail {

// Cyclic coordinate descent. Each coordinate takes the minimizing step of
// the parabola through three samples of `objective` (exact for quadratics),
// backtracking whenever that step does not decrease the objective.
//
// `objective(x, i)` only needs to include the terms that depend on x[i].
inline void coordinate_descent(std::vector<double>& x, const std::vector<std::size_t>& free,
                               const std::function<double(const std::vector<double>&, std::size_t)>& objective,
                               double stationarity, std::size_t max_sweeps)
{
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double largest_move = 0.0;
        for (std::size_t i : free) {
            const double y0 = x[i];
            const double h = 0.25 * std::max(1.0, std::abs(y0));
            const double f0 = objective(x, i);
            x[i] = y0 + h;
            const double fp = objective(x, i);
            x[i] = y0 - h;
            const double fm = objective(x, i);
            const double curvature = fp - 2.0 * f0 + fm;
            if (!(curvature > 0.0)) {
                x[i] = y0;
                throw ConvergenceError("objective is not convex along coordinate " + std::to_string(i),
                                       f0, curvature);
            }
            // Near the minimum the objective is flat to O(step²), so a
            // rise within rounding noise does not reject the step.
            const double noise = 64.0 * std::numeric_limits<double>::epsilon()
                                 * (std::abs(f0) + std::abs(fp) + std::abs(fm));
            double step = -0.5 * h * (fp - fm) / curvature;
            x[i] = y0 + step;
            for (int k = 0; k < 60 && objective(x, i) > f0 + noise; ++k) {
                step *= 0.5;
                x[i] = y0 + step;
            }
            if (objective(x, i) > f0 + noise) {
                x[i] = y0;
                step = 0.0;
            }
            largest_move = std::max(largest_move, std::abs(step) / std::max(1.0, std::abs(x[i])));
        }
        if (largest_move <= stationarity) {
            return;
        }
    }
    throw ConvergenceError("coordinate descent did not reach stationarity after "
                               + std::to_string(max_sweeps) + " sweeps",
                           0.0, 0.0);
}

} // namespace tsvar::detail
