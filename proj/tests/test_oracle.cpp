// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"

using namespace capa;
using capa::test::make_cor;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("orthogonal channels reach the analytic optimum") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(0.0, 0.0), 1.0);
    OracleOptions opts;
    opts.seed = 7;
    const SubspaceResult res = oracle_search(cor, 1.0, 1.0, 100.0, opts);
    CHECK(res.outcome.secrecy_bits ==
          doctest::Approx(std::log2(101.0)).epsilon(1e-4));
}

TEST_CASE("nearly identical channels give zero bits") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(1.0 - 1e-9, 0.0), 1.0);
    OracleOptions opts;
    opts.seed = 8;
    opts.starts = 16;
    const SubspaceResult res = oracle_search(cor, 1.0, 1.0, 100.0, opts);
    CHECK(res.outcome.secrecy_bits <= 1e-3);
}

TEST_CASE("returned weights respect the power budget") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (const auto& s : capa::test::random_scenarios(5, 0x0AC1)) {
        const auto cor = scenario_correlation(s, rule);
        OracleOptions opts;
        opts.seed = 4242;
        opts.starts = 8;
        const SubspaceResult res = oracle_search(cor, s.ir.noise_power,
                                                 s.eve.noise_power, 100.0, opts);
        CHECK(weights_power(res.weights, cor) <= 100.0 * (1.0 + 1e-9));
    }
}

TEST_CASE("same seed reproduces the result, warm starts bound it below") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    const auto scenarios = capa::test::random_scenarios(3, 0x0AC2);
    for (const auto& s : scenarios) {
        const auto cor = scenario_correlation(s, rule);
        OracleOptions opts;
        opts.seed = 99;
        opts.starts = 12;
        const SubspaceResult a = oracle_search(cor, s.ir.noise_power,
                                               s.eve.noise_power, 100.0, opts);
        const SubspaceResult b = oracle_search(cor, s.ir.noise_power,
                                               s.eve.noise_power, 100.0, opts);
        CHECK(a.outcome.secrecy_bits == b.outcome.secrecy_bits);

        const double sca = optimize_subspace(cor, s.ir.noise_power,
                                             s.eve.noise_power, 100.0)
                               .outcome.secrecy_bits;
        CHECK(a.outcome.secrecy_bits >= sca - 1e-9);
    }
}

TEST_CASE("certifies the optimizer on discrete-array Gram matrices too") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (const auto& s : capa::test::random_scenarios(5, 0x0AC4)) {
        const CorrelationMatrix gram = gram_from_vectors(
            scenario_discrete_vector(s, s.ir), scenario_discrete_vector(s, s.eve));
        const double sca = optimize_subspace(gram, s.ir.noise_power,
                                             s.eve.noise_power, 100.0)
                               .outcome.secrecy_bits;
        OracleOptions opts;
        opts.seed = 555;
        opts.starts = 24;
        const double ref = oracle_search(gram, s.ir.noise_power,
                                         s.eve.noise_power, 100.0, opts)
                               .outcome.secrecy_bits;
        CHECK(std::abs(sca - ref) <= 1e-2);
    }
}

TEST_CASE("certifies the subspace optimizer on stock scenarios") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    int agree = 0;
    const auto scenarios = capa::test::random_scenarios(10, 0x0AC3);
    for (const auto& s : scenarios) {
        const auto cor = scenario_correlation(s, rule);
        const double sca = optimize_subspace(cor, s.ir.noise_power,
                                             s.eve.noise_power, 100.0)
                               .outcome.secrecy_bits;
        OracleOptions opts;
        opts.seed = 1234;
        opts.starts = 32;
        const double ref = oracle_search(cor, s.ir.noise_power,
                                         s.eve.noise_power, 100.0, opts)
                               .outcome.secrecy_bits;
        if (std::abs(sca - ref) <= 1e-2) ++agree;
    }
    CHECK(agree >= 9);
}

TEST_SUITE_END();
