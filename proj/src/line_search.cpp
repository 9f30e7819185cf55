// SPDX-License-Identifier: Apache-2.0
#include "capa/line_search.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

double maximize_scalar(const std::function<double(double)>& f, double lo,
                       double hi, int grid_points, double tol) {
    if (!(hi >= lo)) throw std::invalid_argument("empty search interval");
    if (grid_points < 2 || hi == lo) return lo;

    const double step = (hi - lo) / (grid_points - 1);
    int best = 0;
    double best_value = f(lo);
    for (int i = 1; i < grid_points; ++i) {
        const double value = f(lo + i * step);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }

    double a = lo + std::max(0, best - 1) * step;
    double b = lo + std::min(grid_points - 1, best + 1) * step;

    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double mid = 0.5 * (a + b);
    // Keep the grid winner if refinement drifted onto a worse point.
    return f(mid) >= best_value ? mid : lo + best * step;
}

}  // namespace capa
