// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "capa/quadrature.hpp"

namespace capa {

/// Weighting vectors placing the information and jamming currents inside the
/// two-dimensional span of the receiver channel functions:
///   J_info(s) = info[0] H_I(s) + info[1] H_E(s)
///   J_an(s)   = an[0]  H_I(s) + an[1]  H_E(s)
struct WeightPair {
    Eigen::Vector2cd info = Eigen::Vector2cd::Zero();
    Eigen::Vector2cd an = Eigen::Vector2cd::Zero();
};

/// Effective two-dimensional channels: to_ir = [h_ii, h_ei], to_eve =
/// [h_ie, h_ee]. to_ir[1] equals conj(to_eve[0]).
struct EffectiveChannels {
    Eigen::Vector2cd to_ir;
    Eigen::Vector2cd to_eve;
};

struct SolverDiagnostics {
    int outer_iterations = 0;
    int inner_iterations_total = 0;
    int first_round_inner_iterations = 0;
    double rank_one_gap = 0.0;
    bool rank_one_met = true;
    double lifted_rate_bits = 0.0;
    double wallclock_ms = 0.0;
    std::string note;
    // Penalized objective after each inner iteration, one list per outer
    // round; the leading entry of each list is the value at the round start.
    std::vector<std::vector<double>> objective_rounds;
};

/// Rates, SINRs and power accounting for one configuration. Power fields are
/// in the same units as the power budget fed to the optimizer.
struct SecrecyOutcome {
    double rate_ir_bits = 0.0;
    double rate_eve_bits = 0.0;
    double secrecy_bits = 0.0;  // clamped at zero
    double sinr_ir = 0.0;
    double sinr_eve = 0.0;
    double power_info = 0.0;
    double power_an = 0.0;
    double power_used = 0.0;
    SolverDiagnostics diagnostics;
};

EffectiveChannels effective_channels(const CorrelationMatrix& cor);

/// Total radiated power a1^H Hcor a1 + a2^H Hcor a2.
double weights_power(const WeightPair& weights, const CorrelationMatrix& cor);

/// Closed-form rates in the channel subspace:
///   sinr_ir  = |h_I^H a1|^2 / (|h_I^H a2|^2 + noise_ir)
///   sinr_eve = |h_E^H a1|^2 / (|h_E^H a2|^2 + noise_eve)
/// Rates are computed in nats internally and converted to bits once.
SecrecyOutcome secrecy_rate_closed(const WeightPair& weights,
                                   const CorrelationMatrix& cor,
                                   double noise_ir, double noise_eve);

/// Same rate formula for explicit channel/weight vectors of any dimension.
SecrecyOutcome secrecy_rate_vectors(const Eigen::VectorXcd& chan_ir,
                                    const Eigen::VectorXcd& chan_eve,
                                    const Eigen::VectorXcd& w_info,
                                    const Eigen::VectorXcd& w_an,
                                    double noise_ir, double noise_eve);

/// Current pattern samples J(s) = a[0] H_I(s) + a[1] H_E(s) on the given
/// aperture points.
std::vector<cdouble> reconstruct_current(const Eigen::Vector2cd& weights,
                                         const UserSpec& ir, const UserSpec& eve,
                                         const Aperture& aperture,
                                         const EMConstants& consts,
                                         const std::vector<Vec3>& grid);

/// Rate evaluation straight from sampled current patterns: the four inner
/// products integral(H^* J) are computed by quadrature on the rule's tensor
/// grid. Serves as the integral-domain cross-check of the closed form.
SecrecyOutcome secrecy_rate_direct(const std::vector<cdouble>& j_info,
                                   const std::vector<cdouble>& j_an,
                                   const UserSpec& ir, const UserSpec& eve,
                                   const QuadratureRule& rule,
                                   const Aperture& aperture,
                                   const EMConstants& consts);

inline double bits_from_nats(double nats) { return nats / M_LN2; }

}  // namespace capa
