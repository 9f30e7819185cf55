// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "capa/experiment.hpp"

namespace capa::test {

/// Deterministic stream of stock-setup scenarios with receivers drawn from
/// the default region.
inline std::vector<ScenarioConfig> random_scenarios(int count,
                                                    std::uint64_t master) {
    const ScenarioConfig base = default_scenario();
    const Region region;
    const QuadratureRule rule = gauss_legendre_rule(base.quadrature_order);
    std::vector<ScenarioConfig> out;
    out.reserve(count);
    for (int r = 0; r < count; ++r) {
        std::mt19937_64 rng(derive_seed(master, 11, r));
        const SampledUsers users =
            sample_users(region, base.aperture, base.consts, rule,
                         base.ir.noise_power, base.eve.noise_power, rng);
        ScenarioConfig s = base;
        s.ir = users.ir;
        s.eve = users.eve;
        out.push_back(std::move(s));
    }
    return out;
}

inline WeightPair random_weight_pair(std::mt19937_64& rng,
                                     const CorrelationMatrix& cor, double budget) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    WeightPair w;
    w.info << cdouble(gauss(rng), gauss(rng)), cdouble(gauss(rng), gauss(rng));
    w.an << cdouble(gauss(rng), gauss(rng)), cdouble(gauss(rng), gauss(rng));
    const double scale = std::sqrt(budget / weights_power(w, cor));
    w.info *= scale;
    w.an *= scale;
    return w;
}

/// Correlation matrix assembled directly from entries (test scaffolding for
/// closed-form cases).
inline CorrelationMatrix make_cor(double h_ii, cdouble h_ie, double h_ee) {
    CorrelationMatrix cor;
    cor.h_ii = h_ii;
    cor.h_ee = h_ee;
    cor.h_ie = h_ie;
    cor.quadrature_order = 0;
    return cor;
}

}  // namespace capa::test
