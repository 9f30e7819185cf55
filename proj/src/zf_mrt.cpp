// SPDX-License-Identifier: Apache-2.0
#include "capa/zf_mrt.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "capa/line_search.hpp"

namespace capa {

std::pair<Eigen::Vector2cd, double> zf_weights(const CorrelationMatrix& cor) {
    const double det = cor.determinant();
    if (std::abs(det) < kDegeneracyThreshold * cor.h_ii * cor.h_ee)
        throw DegenerateChannels("degenerate channels: zero-forcing undefined");
    Eigen::Vector2cd u_e;
    u_e << cor.inv_ie(), cdouble(cor.inv_ee(), 0.0);
    // u_ee = h_ii / det is real by construction; the stored entry carries no
    // imaginary residue because the inverse is formed in closed form.
    return {u_e, cor.inv_ee()};
}

double reduced_rate(double power_info, double budget, double q, double t, double c) {
    const double gain = std::log1p(q * power_info);
    const double denom = budget - power_info + c;
    const double leak = denom > 0.0 ? std::log1p(t * power_info / denom) : gain;
    return std::max(0.0, bits_from_nats(gain - leak));
}

ZfMrtSolution allocate_power(const CorrelationMatrix& cor, double noise_ir,
                             double noise_eve, double budget, double tol) {
    if (budget < 0.0) throw std::invalid_argument("negative power budget");
    if (tol <= 0.0) tol = 1e-6 * std::max(budget, 1.0);
    const auto start = std::chrono::steady_clock::now();

    ZfMrtSolution sol;
    const auto [u_e, u_ee] = zf_weights(cor);
    sol.q = cor.h_ii / noise_ir;
    sol.t = std::norm(cor.h_ei()) * u_ee / cor.h_ii;
    sol.c = u_ee * noise_eve;

    sol.power_info = maximize_scalar(
        [&](double p) { return reduced_rate(p, budget, sol.q, sol.t, sol.c); }, 0.0,
        budget, 1000, tol);
    sol.power_an = budget - sol.power_info;

    sol.weights.info << cdouble(std::sqrt(sol.power_info / cor.h_ii), 0.0),
        cdouble(0.0, 0.0);
    sol.weights.an = std::sqrt(sol.power_an / u_ee) * u_e;

    sol.outcome = secrecy_rate_closed(sol.weights, cor, noise_ir, noise_eve);
    sol.outcome.diagnostics.wallclock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                  start)
            .count();
    return sol;
}

}  // namespace capa
