// SPDX-License-Identifier: Apache-2.0
#include "capa/scenario.hpp"

#include "capa/em_channel.hpp"

namespace capa {

CorrelationMatrix scenario_correlation(const ScenarioConfig& scenario,
                                       const QuadratureRule& rule) {
    CorrelationMatrix cor = correlation_matrix(scenario.ir, scenario.eve,
                                               scenario.aperture, scenario.consts,
                                               rule);
    const double k2 = kCurrentUnitAmps * kCurrentUnitAmps;
    cor.h_ii *= k2;
    cor.h_ee *= k2;
    cor.h_ie *= k2;
    return cor;
}

Eigen::VectorXcd scenario_discrete_vector(const ScenarioConfig& scenario,
                                          const UserSpec& user) {
    return kCurrentUnitAmps *
           discrete_channel_vector(scenario.aperture, user, scenario.consts);
}

}  // namespace capa
