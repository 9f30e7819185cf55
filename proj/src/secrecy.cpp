// SPDX-License-Identifier: Apache-2.0
#include "capa/secrecy.hpp"

#include <cmath>

namespace capa {

namespace {

SecrecyOutcome outcome_from_sinr(double sinr_ir, double sinr_eve) {
    SecrecyOutcome out;
    out.sinr_ir = sinr_ir;
    out.sinr_eve = sinr_eve;
    const double rate_ir_nats = std::log1p(sinr_ir);
    const double rate_eve_nats = std::log1p(sinr_eve);
    out.rate_ir_bits = bits_from_nats(rate_ir_nats);
    out.rate_eve_bits = bits_from_nats(rate_eve_nats);
    out.secrecy_bits = std::max(0.0, bits_from_nats(rate_ir_nats - rate_eve_nats));
    return out;
}

}  // namespace

EffectiveChannels effective_channels(const CorrelationMatrix& cor) {
    EffectiveChannels ch;
    ch.to_ir << cdouble(cor.h_ii, 0.0), cor.h_ei();
    ch.to_eve << cor.h_ie, cdouble(cor.h_ee, 0.0);
    return ch;
}

double weights_power(const WeightPair& weights, const CorrelationMatrix& cor) {
    const Eigen::Matrix2cd h = cor.matrix();
    const cdouble p = weights.info.dot(h * weights.info) + weights.an.dot(h * weights.an);
    return p.real();
}

SecrecyOutcome secrecy_rate_closed(const WeightPair& weights,
                                   const CorrelationMatrix& cor,
                                   double noise_ir, double noise_eve) {
    const EffectiveChannels ch = effective_channels(cor);
    const double sig_ir = std::norm(ch.to_ir.dot(weights.info));
    const double an_ir = std::norm(ch.to_ir.dot(weights.an));
    const double sig_eve = std::norm(ch.to_eve.dot(weights.info));
    const double an_eve = std::norm(ch.to_eve.dot(weights.an));

    SecrecyOutcome out =
        outcome_from_sinr(sig_ir / (an_ir + noise_ir), sig_eve / (an_eve + noise_eve));
    const Eigen::Matrix2cd h = cor.matrix();
    out.power_info = weights.info.dot(h * weights.info).real();
    out.power_an = weights.an.dot(h * weights.an).real();
    out.power_used = out.power_info + out.power_an;
    return out;
}

SecrecyOutcome secrecy_rate_vectors(const Eigen::VectorXcd& chan_ir,
                                    const Eigen::VectorXcd& chan_eve,
                                    const Eigen::VectorXcd& w_info,
                                    const Eigen::VectorXcd& w_an,
                                    double noise_ir, double noise_eve) {
    const double sig_ir = std::norm(chan_ir.dot(w_info));
    const double an_ir = std::norm(chan_ir.dot(w_an));
    const double sig_eve = std::norm(chan_eve.dot(w_info));
    const double an_eve = std::norm(chan_eve.dot(w_an));

    SecrecyOutcome out =
        outcome_from_sinr(sig_ir / (an_ir + noise_ir), sig_eve / (an_eve + noise_eve));
    out.power_info = w_info.squaredNorm();
    out.power_an = w_an.squaredNorm();
    out.power_used = out.power_info + out.power_an;
    return out;
}

std::vector<cdouble> reconstruct_current(const Eigen::Vector2cd& weights,
                                         const UserSpec& ir, const UserSpec& eve,
                                         const Aperture& aperture,
                                         const EMConstants& consts,
                                         const std::vector<Vec3>& grid) {
    std::vector<cdouble> samples;
    samples.reserve(grid.size());
    for (const Vec3& s : grid) {
        samples.push_back(weights[0] * scalar_channel(ir, s, aperture, consts) +
                          weights[1] * scalar_channel(eve, s, aperture, consts));
    }
    return samples;
}

SecrecyOutcome secrecy_rate_direct(const std::vector<cdouble>& j_info,
                                   const std::vector<cdouble>& j_an,
                                   const UserSpec& ir, const UserSpec& eve,
                                   const QuadratureRule& rule,
                                   const Aperture& aperture,
                                   const EMConstants& consts) {
    const auto ir_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(ir, s, aperture, consts); },
        rule, aperture);
    const auto eve_samples = sample_field(
        [&](const Vec3& s) { return scalar_channel(eve, s, aperture, consts); },
        rule, aperture);

    auto inner = [&](const std::vector<cdouble>& chan,
                     const std::vector<cdouble>& current) {
        cdouble acc(0.0, 0.0);
        for (int my = 0; my < rule.order; ++my)
            for (int mx = 0; mx < rule.order; ++mx) {
                const std::size_t idx = static_cast<std::size_t>(my) * rule.order + mx;
                acc += rule.weights[mx] * rule.weights[my] *
                       std::conj(chan[idx]) * current[idx];
            }
        return 0.25 * aperture.length_x * aperture.length_y * acc;
    };

    const double sig_ir = std::norm(inner(ir_samples, j_info));
    const double an_ir = std::norm(inner(ir_samples, j_an));
    const double sig_eve = std::norm(inner(eve_samples, j_info));
    const double an_eve = std::norm(inner(eve_samples, j_an));

    SecrecyOutcome out = outcome_from_sinr(sig_ir / (an_ir + ir.noise_power),
                                           sig_eve / (an_eve + eve.noise_power));
    auto self_power = [&](const std::vector<cdouble>& current) {
        double acc = 0.0;
        for (int my = 0; my < rule.order; ++my)
            for (int mx = 0; mx < rule.order; ++mx) {
                const std::size_t idx = static_cast<std::size_t>(my) * rule.order + mx;
                acc += rule.weights[mx] * rule.weights[my] * std::norm(current[idx]);
            }
        return 0.25 * aperture.length_x * aperture.length_y * acc;
    };
    out.power_info = self_power(j_info);
    out.power_an = self_power(j_an);
    out.power_used = out.power_info + out.power_an;
    return out;
}

}  // namespace capa
