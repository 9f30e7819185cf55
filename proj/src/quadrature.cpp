// SPDX-License-Identifier: Apache-2.0
#include "capa/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace capa {

QuadratureRule gauss_legendre_rule(int order) {
    if (order < 1 || order > 512)
        throw std::invalid_argument("quadrature order must be in [1, 512]");

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);

    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-type initial guess for the i-th root (descending).
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: p1 = P_order(x), p2 = P_{order-1}(x).
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            dp = order * (x * p1 - p2) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        // Nodes stored in ascending order; the rule is symmetric about 0.
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

std::vector<Vec3> tensor_grid_points(const QuadratureRule& rule,
                                     const Aperture& aperture) {
    std::vector<Vec3> points;
    points.reserve(static_cast<std::size_t>(rule.order) * rule.order);
    for (int my = 0; my < rule.order; ++my)
        for (int mx = 0; mx < rule.order; ++mx)
            points.emplace_back(0.5 * aperture.length_x * rule.nodes[mx],
                                0.5 * aperture.length_y * rule.nodes[my], 0.0);
    return points;
}

cdouble integrate_sampled(const std::vector<cdouble>& samples,
                          const QuadratureRule& rule, const Aperture& aperture) {
    const std::size_t expected = static_cast<std::size_t>(rule.order) * rule.order;
    if (samples.size() != expected)
        throw std::invalid_argument("sample count does not match rule grid");
    cdouble acc(0.0, 0.0);
    for (int my = 0; my < rule.order; ++my)
        for (int mx = 0; mx < rule.order; ++mx)
            acc += rule.weights[mx] * rule.weights[my] *
                   samples[static_cast<std::size_t>(my) * rule.order + mx];
    return 0.25 * aperture.length_x * aperture.length_y * acc;
}

CorrelationMatrix correlation_matrix(const UserSpec& ir, const UserSpec& eve,
                                     const Aperture& aperture,
                                     const EMConstants& consts,
                                     const QuadratureRule& rule) {
    if (rule.order < 2)
        throw std::invalid_argument("correlation matrix needs rule order >= 2");

    const auto ir_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(ir, s, aperture, consts); },
        rule, aperture);
    const auto eve_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(eve, s, aperture, consts); },
        rule, aperture);

    cdouble acc_ii(0.0), acc_ee(0.0), acc_ie(0.0);
    for (int my = 0; my < rule.order; ++my) {
        for (int mx = 0; mx < rule.order; ++mx) {
            const double w = rule.weights[mx] * rule.weights[my];
            const std::size_t idx = static_cast<std::size_t>(my) * rule.order + mx;
            const cdouble hi = ir_samples[idx];
            const cdouble he = eve_samples[idx];
            acc_ii += w * (hi * std::conj(hi));
            acc_ee += w * (he * std::conj(he));
            acc_ie += w * (he * std::conj(hi));
        }
    }
    const double cell = 0.25 * aperture.length_x * aperture.length_y;

    CorrelationMatrix cor;
    cor.h_ii = cell * acc_ii.real();  // diagonal realified by construction
    cor.h_ee = cell * acc_ee.real();
    cor.h_ie = cell * acc_ie;
    cor.quadrature_order = rule.order;

    if (std::abs(cor.determinant()) < kDegeneracyThreshold * cor.h_ii * cor.h_ee)
        throw DegenerateChannels("degenerate channels: correlation matrix singular");
    return cor;
}

CorrelationMatrix gram_from_vectors(const Eigen::VectorXcd& vec_ir,
                                    const Eigen::VectorXcd& vec_eve) {
    if (vec_ir.size() != vec_eve.size() || vec_ir.size() == 0)
        throw std::invalid_argument("channel vectors must have equal nonzero length");

    CorrelationMatrix cor;
    cor.h_ii = vec_ir.squaredNorm();
    cor.h_ee = vec_eve.squaredNorm();
    cor.h_ie = vec_ir.dot(vec_eve);  // integral analogue of H_E H_I^*
    cor.quadrature_order = 0;

    if (std::abs(cor.determinant()) < kDegeneracyThreshold * cor.h_ii * cor.h_ee)
        throw DegenerateChannels("degenerate channels: Gram matrix singular");
    return cor;
}

}  // namespace capa
