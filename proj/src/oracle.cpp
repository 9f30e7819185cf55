// SPDX-License-Identifier: Apache-2.0
#include "capa/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>

namespace capa {

namespace {

using Coords = std::array<double, 6>;

WeightPair weights_from_coords(const Coords& x, const CorrelationMatrix& cor,
                               double budget) {
    WeightPair w;
    w.info << cdouble(x[0], 0.0), cdouble(x[1], x[2]);
    w.an << cdouble(x[3], 0.0), cdouble(x[4], x[5]);
    const double power = weights_power(w, cor);
    if (power > budget && power > 0.0) {
        const double scale = std::sqrt(budget / power);
        w.info *= scale;
        w.an *= scale;
    }
    return w;
}

Coords coords_from_weights(const WeightPair& w) {
    // Remove the global phase of each vector: rotate the first component to
    // the real non-negative axis.
    auto gauge = [](Eigen::Vector2cd v) {
        const double mag = std::abs(v[0]);
        if (mag > 1e-300) v *= std::conj(v[0]) / mag;
        return v;
    };
    const Eigen::Vector2cd a1 = gauge(w.info);
    const Eigen::Vector2cd a2 = gauge(w.an);
    return {a1[0].real(), a1[1].real(), a1[1].imag(),
            a2[0].real(), a2[1].real(), a2[1].imag()};
}

struct SimplexPoint {
    Coords x;
    double value = 0.0;  // negated secrecy rate (minimized)
};

}  // namespace

SubspaceResult oracle_search(const CorrelationMatrix& cor, double noise_ir,
                             double noise_eve, double budget,
                             const OracleOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    auto evaluate = [&](const Coords& x) {
        const WeightPair w = weights_from_coords(x, cor, budget);
        return -secrecy_rate_closed(w, cor, noise_ir, noise_eve).secrecy_bits;
    };

    // Coordinate scale of a full-power vector along the strongest channel.
    const double coord_scale =
        std::sqrt(budget / std::max(std::min(cor.h_ii, cor.h_ee), 1e-300));

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<Coords> starts;
    starts.reserve(opts.starts + 2);
    if (opts.include_warm_starts) {
        starts.push_back(coords_from_weights(
            allocate_power(cor, noise_ir, noise_eve, budget).weights));
        starts.push_back(coords_from_weights(
            optimize_subspace(cor, noise_ir, noise_eve, budget).weights));
    }
    for (int s = 0; s < opts.starts; ++s) {
        Coords x;
        for (double& xi : x) xi = coord_scale * gauss(rng);
        starts.push_back(x);
    }

    Coords best_x = starts.front();
    double best_value = evaluate(best_x);

    for (const Coords& start : starts) {
        // Standard Nelder-Mead with reflection 1, expansion 2,
        // contraction 0.5, shrink 0.5.
        std::array<SimplexPoint, 7> simplex;
        simplex[0] = {start, evaluate(start)};
        for (int i = 0; i < 6; ++i) {
            Coords x = start;
            const double base = std::abs(x[i]) > 1e-12 * coord_scale
                                    ? 0.05 * std::abs(x[i])
                                    : 0.05 * coord_scale;
            x[i] += base;
            simplex[i + 1] = {x, evaluate(x)};
        }

        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            std::sort(simplex.begin(), simplex.end(),
                      [](const SimplexPoint& a, const SimplexPoint& b) {
                          return a.value < b.value;
                      });
            const double spread = simplex.back().value - simplex.front().value;
            if (spread <= opts.simplex_tol * (1.0 + std::abs(simplex.front().value)))
                break;

            Coords centroid{};
            for (int i = 0; i < 6; ++i) {
                double acc = 0.0;
                for (int j = 0; j < 6; ++j) acc += simplex[j].x[i];
                centroid[i] = acc / 6.0;
            }
            auto blend = [&](double t) {
                Coords x;
                for (int i = 0; i < 6; ++i)
                    x[i] = centroid[i] + t * (centroid[i] - simplex.back().x[i]);
                return x;
            };

            const Coords reflected = blend(1.0);
            const double f_reflected = evaluate(reflected);
            if (f_reflected < simplex.front().value) {
                const Coords expanded = blend(2.0);
                const double f_expanded = evaluate(expanded);
                simplex.back() = f_expanded < f_reflected
                                     ? SimplexPoint{expanded, f_expanded}
                                     : SimplexPoint{reflected, f_reflected};
                continue;
            }
            if (f_reflected < simplex[5].value) {
                simplex.back() = {reflected, f_reflected};
                continue;
            }
            const bool outside = f_reflected < simplex.back().value;
            const Coords contracted = blend(outside ? 0.5 : -0.5);
            const double f_contracted = evaluate(contracted);
            if (f_contracted <
                (outside ? f_reflected : simplex.back().value)) {
                simplex.back() = {contracted, f_contracted};
                continue;
            }
            for (int j = 1; j < 7; ++j) {  // shrink toward the best vertex
                for (int i = 0; i < 6; ++i)
                    simplex[j].x[i] = simplex[0].x[i] +
                                      0.5 * (simplex[j].x[i] - simplex[0].x[i]);
                simplex[j].value = evaluate(simplex[j].x);
            }
        }

        std::sort(simplex.begin(), simplex.end(),
                  [](const SimplexPoint& a, const SimplexPoint& b) {
                      return a.value < b.value;
                  });
        if (simplex.front().value < best_value) {  // strict: first start wins ties
            best_value = simplex.front().value;
            best_x = simplex.front().x;
        }
    }

    SubspaceResult result;
    result.weights = weights_from_coords(best_x, cor, budget);
    result.outcome = secrecy_rate_closed(result.weights, cor, noise_ir, noise_eve);
    result.outcome.diagnostics.wallclock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  t0)
            .count();
    return result;
}

}  // namespace capa
