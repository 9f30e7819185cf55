// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"

using namespace capa;
using capa::test::make_cor;

TEST_SUITE_BEGIN("zf_mrt");

TEST_CASE("zero-forcing weights on a hand-inverted matrix") {
    // [[2,1],[1,1]] inverts to [[1,-1],[-1,2]].
    const CorrelationMatrix cor = make_cor(2.0, cdouble(1.0, 0.0), 1.0);
    const auto [u_e, u_ee] = zf_weights(cor);
    CHECK(u_e[0] == cdouble(-1.0, 0.0));
    CHECK(u_e[1] == cdouble(2.0, 0.0));
    CHECK(u_ee == doctest::Approx(2.0));
    // Null and unit-gain identities: rows of the matrix against u_E.
    CHECK(std::abs(2.0 * u_e[0] + 1.0 * u_e[1]) <= 1e-15);
    CHECK(std::abs(1.0 * u_e[0] + 1.0 * u_e[1] - 1.0) <= 1e-15);
}

TEST_CASE("identity correlation matrix gives the trivial direction") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(0.0, 0.0), 1.0);
    const auto [u_e, u_ee] = zf_weights(cor);
    CHECK(u_e[0] == cdouble(0.0, 0.0));
    CHECK(u_e[1] == cdouble(1.0, 0.0));
    CHECK(u_ee == doctest::Approx(1.0));
}

TEST_CASE("jamming pattern energy and field at the eavesdropper") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (const auto& s : capa::test::random_scenarios(5, 0x2F2F)) {
        const auto cor = correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule);
        const auto [u_e, u_ee] = zf_weights(cor);
        const auto grid = tensor_grid_points(rule, s.aperture);
        const double p_an = 0.37e-4;
        const Eigen::Vector2cd a2 = std::sqrt(p_an / u_ee) * u_e;
        const auto j_an =
            reconstruct_current(a2, s.ir, s.eve, s.aperture, s.consts, grid);
        const auto h_eve = sample_field(
            [&](const Vec3& p) {
                return scalar_channel(s.eve, p, s.aperture, s.consts);
            },
            rule, s.aperture);
        cdouble field(0, 0);
        double energy = 0.0;
        for (int my = 0; my < rule.order; ++my)
            for (int mx = 0; mx < rule.order; ++mx) {
                const std::size_t k = static_cast<std::size_t>(my) * rule.order + mx;
                const double wgt = rule.weights[mx] * rule.weights[my];
                field += wgt * std::conj(h_eve[k]) * j_an[k];
                energy += wgt * std::norm(j_an[k]);
            }
        const double cell = 0.25 * s.aperture.length_x * s.aperture.length_y;
        // Field at the Eve equals the square root of the power scaling; the
        // radiated energy equals the allocated jamming power.
        CHECK(std::abs(cell * field) ==
              doctest::Approx(std::sqrt(p_an / u_ee)).epsilon(1e-9));
        CHECK(cell * energy == doctest::Approx(p_an).epsilon(1e-9));
    }
}

TEST_CASE("reduced rate closed form") {
    SUBCASE("hand-computed value") {
        CHECK(reduced_rate(5.0, 10.0, 1.0, 1.0, 1.0) ==
              doctest::Approx(std::log2(6.0) - std::log2(1.0 + 5.0 / 6.0))
                  .epsilon(1e-12));
        CHECK(reduced_rate(5.0, 10.0, 1.0, 1.0, 1.0) ==
              doctest::Approx(1.7105).epsilon(1e-4));
    }
    SUBCASE("zero information power gives zero rate") {
        CHECK(reduced_rate(0.0, 10.0, 3.0, 0.5, 0.2) == 0.0);
    }
    SUBCASE("no leakage makes the rate monotone in the information power") {
        double prev = -1.0;
        for (double p = 0.0; p <= 10.0; p += 0.5) {
            const double r = reduced_rate(p, 10.0, 2.0, 0.0, 1.0);
            CHECK(r >= prev);
            prev = r;
        }
        CHECK(reduced_rate(10.0, 10.0, 2.0, 0.0, 1.0) ==
              doctest::Approx(std::log2(21.0)).epsilon(1e-12));
    }
    SUBCASE("growing the budget never hurts at fixed information power") {
        std::mt19937_64 rng(3);
        for (int k = 0; k < 100; ++k) {
            const double q = uniform_double(rng, 0.01, 10.0);
            const double t = uniform_double(rng, 0.0, 2.0);
            const double c = uniform_double(rng, 0.0, 5.0);
            const double p_info = uniform_double(rng, 0.0, 5.0);
            const double small = p_info + uniform_double(rng, 0.0, 3.0);
            const double large = small + uniform_double(rng, 0.0, 5.0);
            CHECK(reduced_rate(p_info, large, q, t, c) >=
                  reduced_rate(p_info, small, q, t, c) - 1e-12);
        }
    }
}

TEST_CASE("power allocation against an exhaustive grid") {
    // q = t = c = 1, budget 10: compare with a 1e-4-step exhaustive search.
    const double q = 1.0, t = 1.0, c = 1.0, budget = 10.0;
    double best_p = 0.0, best_rate = -1.0;
    for (double p = 0.0; p <= budget; p += 1e-4) {
        const double r = reduced_rate(p, budget, q, t, c);
        if (r > best_rate) {
            best_rate = r;
            best_p = p;
        }
    }
    // Assemble a correlation matrix realizing exactly these coefficients:
    // h_ii = q, u_ee = c (noise 1), |h_ei|^2 = t h_ii / u_ee.
    // With h_ii = 1, h_ee chosen so that u_ee = h_ii / det = 1.
    // det = h_ii h_ee - |h_ie|^2 and u_ee = h_ii/det = 1 -> det = 1.
    // t = |h_ei|^2 u_ee / h_ii = |h_ie|^2 -> h_ie = 1, h_ee = 2.
    const CorrelationMatrix cor = make_cor(1.0, cdouble(1.0, 0.0), 2.0);
    const ZfMrtSolution sol = allocate_power(cor, 1.0, 1.0, budget, 1e-7);
    CHECK(sol.q == doctest::Approx(1.0));
    CHECK(sol.t == doctest::Approx(1.0));
    CHECK(sol.c == doctest::Approx(1.0));
    CHECK(sol.power_info == doctest::Approx(best_p).epsilon(1e-3));
    CHECK(sol.power_info + sol.power_an == doctest::Approx(budget));
    CHECK(reduced_rate(sol.power_info, budget, q, t, c) ==
          doctest::Approx(best_rate).epsilon(1e-6));
}

TEST_CASE("no leakage puts the whole budget on the information signal") {
    const CorrelationMatrix cor = make_cor(2.0, cdouble(0.0, 0.0), 1.0);
    const ZfMrtSolution sol = allocate_power(cor, 1.0, 1.0, 10.0);
    CHECK(sol.t == 0.0);
    CHECK(sol.power_info == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("nearly identical channels leave no secrecy") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(1.0 - 1e-9, 0.0), 1.0);
    const ZfMrtSolution sol = allocate_power(cor, 0.3, 0.3, 50.0);
    CHECK(sol.outcome.secrecy_bits <= 1e-6);
}

TEST_CASE("reported rate matches the closed-form evaluation of the weights") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (const auto& s : capa::test::random_scenarios(10, 0x7A7A)) {
        const auto cor = scenario_correlation(s, rule);
        const ZfMrtSolution sol = allocate_power(cor, s.ir.noise_power,
                                                 s.eve.noise_power,
                                                 s.power_budget_ma2);
        const SecrecyOutcome again = secrecy_rate_closed(
            sol.weights, cor, s.ir.noise_power, s.eve.noise_power);
        CHECK(std::abs(sol.outcome.secrecy_bits - again.secrecy_bits) <= 1e-8);
        // Reduced-form SINRs match the assembled weights.
        CHECK(again.sinr_ir ==
              doctest::Approx(sol.q * sol.power_info).epsilon(1e-10));
        const double gamma_eve = sol.t * sol.power_info /
                                 (sol.power_an + sol.c);
        CHECK(again.sinr_eve == doctest::Approx(gamma_eve).epsilon(1e-10));
        // Power accounting.
        CHECK(again.power_info == doctest::Approx(sol.power_info).epsilon(1e-9));
        CHECK(again.power_an ==
              doctest::Approx(sol.power_an).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("degenerate matrix is rejected") {
    CorrelationMatrix cor = make_cor(1.0, cdouble(1.0, 0.0), 1.0);
    CHECK_THROWS_AS(zf_weights(cor), DegenerateChannels);
    CHECK_THROWS_AS(allocate_power(cor, 1.0, 1.0, 10.0), DegenerateChannels);
}

TEST_SUITE_END();
