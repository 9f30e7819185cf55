// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "capa/secrecy.hpp"

namespace capa {

/// Two-stage closed-form design: the jamming current is the zero-forcing
/// pattern u_ie H_I + u_ee H_E (no interference at the IR), the information
/// current is the matched pattern H_I, and the split of the power budget
/// between the two is found by one-dimensional search over the reduced rate.
struct ZfMrtSolution {
    WeightPair weights;       // info = [sqrt(P_I / h_ii), 0], an = sqrt(P_A / u_ee) u_E
    double power_info = 0.0;  // P_I
    double power_an = 0.0;    // P_A = budget - P_I
    double q = 0.0;           // h_ii / noise_ir
    double t = 0.0;           // |h_ei|^2 u_ee / h_ii
    double c = 0.0;           // u_ee * noise_eve
    SecrecyOutcome outcome;
};

/// Zero-forcing direction: second column u_E = [u_ie, u_ee] of the inverse
/// correlation matrix. Satisfies [h_ii, h_ie] u_E = 0 and [h_ei, h_ee] u_E = 1;
/// the pattern u_ie H_I + u_ee H_E radiates power u_ee.
std::pair<Eigen::Vector2cd, double> zf_weights(const CorrelationMatrix& cor);

/// Reduced secrecy rate of the two-stage design as a function of the
/// information power:
///   [log2(1 + q P_I) - log2(1 + t P_I / (budget - P_I + c))]^+
double reduced_rate(double power_info, double budget, double q, double t, double c);

/// Optimizes the information/jamming power split on [0, budget] by a
/// 1000-point grid plus golden-section refinement down to `tol` (default
/// 1e-6 * budget when tol <= 0). The full budget is always spent.
ZfMrtSolution allocate_power(const CorrelationMatrix& cor, double noise_ir,
                             double noise_eve, double budget, double tol = 0.0);

}  // namespace capa
