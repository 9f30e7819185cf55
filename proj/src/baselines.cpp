// SPDX-License-Identifier: Apache-2.0
#include "capa/baselines.hpp"

#include <chrono>
#include <cmath>

#include "capa/line_search.hpp"

namespace capa {

cdouble fourier_basis(const FourierIndex& n, const Vec3& s, const Aperture& aperture) {
    const double phase = 2.0 * M_PI * (n.n_x * s.x() / aperture.length_x +
                                       n.n_y * s.y() / aperture.length_y);
    return std::polar(1.0 / std::sqrt(aperture.area()), phase);
}

FourierChannel fourier_channel(const UserSpec& ir, const UserSpec& eve,
                               const FourierTruncation& truncation,
                               const Aperture& aperture, const EMConstants& consts,
                               const QuadratureRule& rule) {
    FourierChannel ch;
    ch.truncation = truncation;
    ch.coeff_ir.resize(truncation.count());
    ch.coeff_eve.resize(truncation.count());

    const auto ir_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(ir, s, aperture, consts); },
        rule, aperture);
    const auto eve_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(eve, s, aperture, consts); },
        rule, aperture);

    // The basis separates per axis, so the double quadrature factors into an
    // x-pass per (n_x, m_y) followed by a y-pass per (n_x, n_y).
    const int span_x = 2 * truncation.n_x + 1;
    const int span_y = 2 * truncation.n_y + 1;
    const int order = rule.order;
    auto axis_phase = [&](int harmonic, double coordinate, double length) {
        return std::polar(1.0, -2.0 * M_PI * harmonic * coordinate / length);
    };

    Eigen::MatrixXcd partial_ir(span_x, order), partial_eve(span_x, order);
    partial_ir.setZero();
    partial_eve.setZero();
    for (int ix = 0; ix < span_x; ++ix) {
        const int nx = ix - truncation.n_x;
        for (int my = 0; my < order; ++my) {
            cdouble acc_ir(0.0), acc_eve(0.0);
            for (int mx = 0; mx < order; ++mx) {
                const double x = 0.5 * aperture.length_x * rule.nodes[mx];
                const cdouble conj_phase =
                    axis_phase(nx, x, aperture.length_x) * rule.weights[mx];
                const std::size_t k = static_cast<std::size_t>(my) * order + mx;
                acc_ir += conj_phase * ir_samples[k];
                acc_eve += conj_phase * eve_samples[k];
            }
            partial_ir(ix, my) = acc_ir;
            partial_eve(ix, my) = acc_eve;
        }
    }

    const double cell = 0.25 * aperture.length_x * aperture.length_y /
                        std::sqrt(aperture.area());
    int idx = 0;
    for (int iy = 0; iy < span_y; ++iy) {
        const int ny = iy - truncation.n_y;
        for (int ix = 0; ix < span_x; ++ix, ++idx) {
            cdouble acc_ir(0.0), acc_eve(0.0);
            for (int my = 0; my < order; ++my) {
                const double y = 0.5 * aperture.length_y * rule.nodes[my];
                const cdouble conj_phase =
                    axis_phase(ny, y, aperture.length_y) * rule.weights[my];
                acc_ir += conj_phase * partial_ir(ix, my);
                acc_eve += conj_phase * partial_eve(ix, my);
            }
            ch.coeff_ir[idx] = cell * acc_ir;
            ch.coeff_eve[idx] = cell * acc_eve;
        }
    }
    return ch;
}

SecrecyOutcome rank_one_secrecy(double gain_ir, double gain_eve, double noise_ir,
                                double noise_eve, double budget) {
    auto rate = [&](double p_info, double p_an) {
        const double sinr_ir = gain_ir * p_info / (gain_ir * p_an + noise_ir);
        const double sinr_eve = gain_eve * p_info / (gain_eve * p_an + noise_eve);
        return std::max(0.0,
                        bits_from_nats(std::log1p(sinr_ir) - std::log1p(sinr_eve)));
    };
    const double tol = 1e-8 * std::max(budget, 1.0);
    double best_info = 0.0, best_an = 0.0, best = 0.0;
    // Nested split search; with equal noise the jamming share ends at zero.
    const double p_info = maximize_scalar(
        [&](double pi) {
            const double pa = maximize_scalar(
                [&](double pa_inner) { return rate(pi, pa_inner); }, 0.0,
                budget - pi, 200, tol);
            return rate(pi, pa);
        },
        0.0, budget, 400, tol);
    const double p_an = maximize_scalar(
        [&](double pa_inner) { return rate(p_info, pa_inner); }, 0.0,
        budget - p_info, 200, tol);
    best = rate(p_info, p_an);
    best_info = p_info;
    best_an = p_an;

    SecrecyOutcome out;
    const double sinr_ir = gain_ir * best_info / (gain_ir * best_an + noise_ir);
    const double sinr_eve = gain_eve * best_info / (gain_eve * best_an + noise_eve);
    out.sinr_ir = sinr_ir;
    out.sinr_eve = sinr_eve;
    out.rate_ir_bits = bits_from_nats(std::log1p(sinr_ir));
    out.rate_eve_bits = bits_from_nats(std::log1p(sinr_eve));
    out.secrecy_bits = best;
    out.power_info = best_info;
    out.power_an = best_an;
    out.power_used = best_info + best_an;
    return out;
}

SecrecyOutcome fourier_optimize(const FourierChannel& channel, double noise_ir,
                                double noise_eve, double budget,
                                const FourierOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n_f = channel.truncation.count();
    SecrecyOutcome out;

    if (n_f == 1) {
        out = rank_one_secrecy(std::norm(channel.coeff_ir[0]),
                               std::norm(channel.coeff_eve[0]), noise_ir,
                               noise_eve, budget);
        out.diagnostics.note = "scalar truncation";
    } else if (n_f <= opts.full_lift_limit || opts.force_full_lift) {
        LiftedProblem problem;
        problem.chan_ir = channel.coeff_ir;
        problem.chan_eve = channel.coeff_eve;
        problem.power_metric = Eigen::MatrixXcd::Identity(n_f, n_f);
        problem.rep_ir = channel.coeff_ir;
        problem.rep_eve = channel.coeff_eve;
        problem.noise_ir = noise_ir;
        problem.noise_eve = noise_eve;
        problem.budget = budget;
        out = optimize_lifted(problem, opts.sca).outcome;
        out.diagnostics.note = "full lift";
    } else {
        // The optimum lies in the span of the two coefficient vectors, so the
        // problem reduces to the two-dimensional weighting form on their Gram.
        const CorrelationMatrix gram =
            gram_from_vectors(channel.coeff_ir, channel.coeff_eve);
        out = optimize_subspace(gram, noise_ir, noise_eve, budget, opts.sca).outcome;
        out.diagnostics.note = "projected span";
    }
    out.diagnostics.wallclock_ms = std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
    return out;
}

SecrecyOutcome mimo_secrecy(const ScenarioConfig& scenario, SubspaceMethod method,
                            const ScaOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::VectorXcd vec_ir = scenario_discrete_vector(scenario, scenario.ir);
    const Eigen::VectorXcd vec_eve = scenario_discrete_vector(scenario, scenario.eve);
    const double budget = scenario.power_budget_ma2;

    SecrecyOutcome out;
    try {
        const CorrelationMatrix gram = gram_from_vectors(vec_ir, vec_eve);
        if (method == SubspaceMethod::PenaltySca) {
            out = optimize_subspace(gram, scenario.ir.noise_power,
                                    scenario.eve.noise_power, budget, opts)
                      .outcome;
        } else {
            out = allocate_power(gram, scenario.ir.noise_power,
                                 scenario.eve.noise_power, budget)
                      .outcome;
        }
    } catch (const DegenerateChannels&) {
        // Parallel channel vectors: one spatial dimension left.
        out = rank_one_secrecy(vec_ir.squaredNorm(), vec_eve.squaredNorm(),
                               scenario.ir.noise_power, scenario.eve.noise_power,
                               budget);
        out.diagnostics.note = "parallel channels";
    }
    out.diagnostics.wallclock_ms = std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
    return out;
}

SecrecyOutcome mrt_mrt_baseline(const CorrelationMatrix& cor, double noise_ir,
                                double noise_eve, double budget) {
    const auto t0 = std::chrono::steady_clock::now();
    auto weights_for = [&](double p_info) {
        WeightPair w;
        w.info << cdouble(std::sqrt(p_info / cor.h_ii), 0.0), cdouble(0.0, 0.0);
        w.an << cdouble(0.0, 0.0),
            cdouble(std::sqrt((budget - p_info) / cor.h_ee), 0.0);
        return w;
    };
    const double p_info = maximize_scalar(
        [&](double p) {
            return secrecy_rate_closed(weights_for(p), cor, noise_ir, noise_eve)
                .secrecy_bits;
        },
        0.0, budget, 1000, 1e-6 * std::max(budget, 1.0));

    SecrecyOutcome out =
        secrecy_rate_closed(weights_for(p_info), cor, noise_ir, noise_eve);
    out.diagnostics.wallclock_ms = std::chrono::duration<double, std::milli>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
    return out;
}

}  // namespace capa
