// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "capa/em_channel.hpp"
#include "capa/geometry.hpp"

namespace capa {

/// Gauss-Legendre rule on (-1, 1): nodes strictly increasing, weights
/// positive, sum of weights equal to 2. Exact for polynomials of degree
/// <= 2 * order - 1.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes the order-M Gauss-Legendre rule by Newton iteration on the
/// Legendre polynomial with Chebyshev initial guesses. M must be in [1, 512].
QuadratureRule gauss_legendre_rule(int order);

/// Tensor-product grid point (x_mx * Lx/2, x_my * Ly/2, 0) for each node
/// pair, ordered row-major in (my, mx). Field samples taken on this grid
/// pair with integrate_sampled below.
std::vector<Vec3> tensor_grid_points(const QuadratureRule& rule,
                                     const Aperture& aperture);

/// Tensor-product integral of a callable field over the aperture:
/// (Lx Ly / 4) sum_my sum_mx w_mx w_my f(x_mx Lx/2, x_my Ly/2, 0).
template <typename F>
cdouble integrate_aperture(F&& field, const QuadratureRule& rule,
                           const Aperture& aperture) {
    cdouble acc(0.0, 0.0);
    for (int my = 0; my < rule.order; ++my) {
        for (int mx = 0; mx < rule.order; ++mx) {
            const Vec3 s(0.5 * aperture.length_x * rule.nodes[mx],
                         0.5 * aperture.length_y * rule.nodes[my], 0.0);
            acc += rule.weights[mx] * rule.weights[my] * field(s);
        }
    }
    return 0.25 * aperture.length_x * aperture.length_y * acc;
}

/// Same rule applied to samples already laid out on the tensor grid.
cdouble integrate_sampled(const std::vector<cdouble>& samples,
                          const QuadratureRule& rule, const Aperture& aperture);

/// Samples a callable field on the tensor grid (row-major in (my, mx)).
template <typename F>
std::vector<cdouble> sample_field(F&& field, const QuadratureRule& rule,
                                  const Aperture& aperture) {
    std::vector<cdouble> samples;
    samples.reserve(static_cast<std::size_t>(rule.order) * rule.order);
    for (int my = 0; my < rule.order; ++my) {
        for (int mx = 0; mx < rule.order; ++mx) {
            samples.push_back(field(Vec3(0.5 * aperture.length_x * rule.nodes[mx],
                                         0.5 * aperture.length_y * rule.nodes[my],
                                         0.0)));
        }
    }
    return samples;
}

/// 2x2 Gram matrix of the two receiver channel functions under the aperture
/// inner product <f, g> = integral of g f^* over the surface:
///
///   entry(i, j) = integral H_j H_i^* ds
///
/// Hermitian by construction (the cross entry is computed once and
/// conjugated), diagonal entries real positive. Also carries the closed-form
/// 2x2 inverse; `inv_ee` is real positive for a nonsingular matrix.
struct CorrelationMatrix {
    double h_ii = 0.0;
    double h_ee = 0.0;
    cdouble h_ie{0.0, 0.0};  // integral of H_E H_I^*
    int quadrature_order = 0;

    cdouble h_ei() const { return std::conj(h_ie); }
    double determinant() const { return h_ii * h_ee - std::norm(h_ie); }

    Eigen::Matrix2cd matrix() const {
        Eigen::Matrix2cd m;
        m << cdouble(h_ii, 0.0), h_ie, h_ei(), cdouble(h_ee, 0.0);
        return m;
    }

    // Closed-form inverse entries.
    cdouble inv_ii() const { return cdouble(h_ee / determinant(), 0.0); }
    cdouble inv_ie() const { return -h_ie / determinant(); }
    cdouble inv_ei() const { return -h_ei() / determinant(); }
    double inv_ee() const { return h_ii / determinant(); }

    Eigen::Matrix2cd inverse() const {
        Eigen::Matrix2cd m;
        m << inv_ii(), inv_ie(), inv_ei(), cdouble(inv_ee(), 0.0);
        return m;
    }
};

/// Builds the correlation matrix by quadrature. Throws DegenerateChannels
/// when |det| < 1e-14 * h_ii * h_ee (channels numerically parallel).
CorrelationMatrix correlation_matrix(const UserSpec& ir, const UserSpec& eve,
                                     const Aperture& aperture,
                                     const EMConstants& consts,
                                     const QuadratureRule& rule);

/// Gram matrix of two explicit channel vectors under the Euclidean inner
/// product; used by the discrete-array and basis-expansion paths. The
/// degeneracy threshold matches correlation_matrix.
CorrelationMatrix gram_from_vectors(const Eigen::VectorXcd& vec_ir,
                                    const Eigen::VectorXcd& vec_eve);

inline constexpr double kDegeneracyThreshold = 1e-14;

}  // namespace capa
