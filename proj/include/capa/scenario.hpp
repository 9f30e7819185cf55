// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "capa/geometry.hpp"
#include "capa/quadrature.hpp"

namespace capa {

/// Sampling box for receiver positions, in front of the aperture.
struct Region {
    double u_x = 5.0;     // |r_x| <= u_x
    double u_y = 5.0;     // |r_y| <= u_y
    double z_min = 15.0;  // z_min <= r_z <= z_max, z_min > 0
    double z_max = 30.0;
};

/// Scenario currents are counted in mA/m, so power budgets are mA^2 numbers
/// while the Green kernel is evaluated per unit A/m. The scenario-level
/// channel quantities below fold in this factor once; everything downstream
/// (budgets, radiated powers, correlation entries) is then mutually
/// consistent in mA units.
inline constexpr double kCurrentUnitAmps = 1e-3;

/// One complete experiment scenario.
struct ScenarioConfig {
    Aperture aperture;
    EMConstants consts;
    UserSpec ir;
    UserSpec eve;
    double power_budget_ma2 = 100.0;
    int quadrature_order = 20;
};

/// Defaults of the stock experiment setup: 0.25 m^2 square aperture at
/// 2.4 GHz, free-space impedance, equal receiver noise 5.6e-3 V^2/m^2 and a
/// 100 mA^2 budget.
inline ScenarioConfig default_scenario() {
    ScenarioConfig s;
    s.aperture = Aperture::square(0.25);
    s.consts = EMConstants::from_frequency(2.4e9);
    s.ir.noise_power = 5.6e-3;
    s.eve.noise_power = 5.6e-3;
    return s;
}

/// Correlation matrix of the per-milliampere channels (SI entries scaled by
/// kCurrentUnitAmps^2); feed this to the optimizers together with the mA^2
/// power budget.
CorrelationMatrix scenario_correlation(const ScenarioConfig& scenario,
                                       const QuadratureRule& rule);

/// Per-milliampere discrete-array channel vector.
Eigen::VectorXcd scenario_discrete_vector(const ScenarioConfig& scenario,
                                          const UserSpec& user);

}  // namespace capa
