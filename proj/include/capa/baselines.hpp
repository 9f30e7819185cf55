// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "capa/sca.hpp"
#include "capa/scenario.hpp"

namespace capa {

/// Truncation of the orthonormal complex-exponential expansion. The aperture
/// has no extent in z, so n_z is kept only for interface symmetry and the
/// z-factor contributes 1.
struct FourierTruncation {
    int n_x = 4;
    int n_y = 4;
    int n_z = 0;
    int count() const { return (2 * n_x + 1) * (2 * n_y + 1) * (2 * n_z + 1); }
};

struct FourierIndex {
    int n_x = 0;
    int n_y = 0;
    int n_z = 0;
};

/// Orthonormal basis function over the rectangular aperture:
/// (1 / sqrt(A)) exp(j 2 pi (n_x s_x / L_x + n_y s_y / L_y)).
cdouble fourier_basis(const FourierIndex& n, const Vec3& s, const Aperture& aperture);

/// Channel coefficient vectors under the basis, coeff[n] = <Phi_n, H> by
/// quadrature, ordered with n_x fastest then n_y (n_z fixed at 0).
struct FourierChannel {
    FourierTruncation truncation;
    Eigen::VectorXcd coeff_ir;
    Eigen::VectorXcd coeff_eve;
};
FourierChannel fourier_channel(const UserSpec& ir, const UserSpec& eve,
                               const FourierTruncation& truncation,
                               const Aperture& aperture, const EMConstants& consts,
                               const QuadratureRule& rule);

struct FourierOptions {
    ScaOptions sca;
    // Dimension cap for the full lifted solve; above it the problem is
    // projected onto the span of the two coefficient vectors, where the
    // optimum is known to live.
    int full_lift_limit = 8;
    bool force_full_lift = false;
};

/// Optimizes the expansion coefficients of both currents under the Euclidean
/// power constraint. A single-function truncation degenerates to a scalar
/// power split.
SecrecyOutcome fourier_optimize(const FourierChannel& channel, double noise_ir,
                                double noise_eve, double budget,
                                const FourierOptions& opts = {});

enum class SubspaceMethod { PenaltySca, ZfMrt };

/// Discrete planar-array benchmark: builds the half-wavelength element
/// channel vectors, forms their Gram matrix and runs the chosen subspace
/// optimizer unchanged. Parallel channels (single element, boresight pairs)
/// fall back to the scalar power split.
SecrecyOutcome mimo_secrecy(const ScenarioConfig& scenario, SubspaceMethod method,
                            const ScaOptions& opts = {});

/// Matched-direction benchmark: information current along H_I, jamming
/// current along H_E, split of the budget by one-dimensional search over the
/// exact closed-form rate.
SecrecyOutcome mrt_mrt_baseline(const CorrelationMatrix& cor, double noise_ir,
                                double noise_eve, double budget);

/// Best secrecy rate when both currents share one spatial direction with
/// receive gains |g_ir|^2 and |g_eve|^2: nested one-dimensional search over
/// the information/jamming split of the budget.
SecrecyOutcome rank_one_secrecy(double gain_ir, double gain_eve, double noise_ir,
                                double noise_eve, double budget);

}  // namespace capa
