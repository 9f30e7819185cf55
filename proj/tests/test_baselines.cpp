// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"

using namespace capa;

TEST_SUITE_BEGIN("baselines");

TEST_CASE("basis function normalization and counting") {
    const Aperture ap = Aperture::square(0.25);
    const cdouble dc = fourier_basis({0, 0, 0}, Vec3(0.1, -0.2, 0), ap);
    CHECK(dc.real() == doctest::Approx(2.0));
    CHECK(dc.imag() == doctest::Approx(0.0));
    CHECK(FourierTruncation{4, 4, 0}.count() == 81);
    CHECK(FourierTruncation{0, 0, 0}.count() == 1);
    CHECK(FourierTruncation{3, 0, 0}.count() == 7);
}

TEST_CASE("basis functions are orthonormal under the quadrature rule") {
    const Aperture ap = Aperture::square(0.25);
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (int nx = -3; nx <= 3; ++nx) {
        for (int mx = -3; mx <= 3; ++mx) {
            const cdouble inner = integrate_aperture(
                [&](const Vec3& s) {
                    return fourier_basis({nx, 1, 0}, s, ap) *
                           std::conj(fourier_basis({mx, 1, 0}, s, ap));
                },
                rule, ap);
            const double expect = nx == mx ? 1.0 : 0.0;
            // Limit set by the order-20 rule resolving six-cycle beats.
            CHECK(std::abs(inner - expect) <= 1e-9);
        }
    }
}

TEST_CASE("channel coefficients capture most of the channel energy") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    const auto scenarios = capa::test::random_scenarios(3, 0xF0C0);
    for (const auto& s : scenarios) {
        const auto cor = correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule);
        const FourierChannel ch = fourier_channel(s.ir, s.eve, {8, 8, 0},
                                                  s.aperture, s.consts, rule);
        // Captured energy never exceeds the total (orthonormal expansion).
        CHECK(ch.coeff_ir.squaredNorm() <= cor.h_ii * (1.0 + 1e-9));
        CHECK(ch.coeff_eve.squaredNorm() <= cor.h_ee * (1.0 + 1e-9));
        CHECK(ch.coeff_ir.squaredNorm() >= 0.5 * cor.h_ii);
    }
}

TEST_CASE("band-limited channels make the expansion exact") {
    // Synthetic coefficient vectors: the full lift and the span-projected
    // route must both match the two-dimensional optimum on the same Gram.
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    FourierChannel ch;
    ch.truncation = {1, 0, 0};  // 3 basis functions: full lift engages
    ch.coeff_ir.resize(3);
    ch.coeff_eve.resize(3);
    for (int i = 0; i < 3; ++i) {
        ch.coeff_ir[i] = 0.03 * cdouble(gauss(rng), gauss(rng));
        ch.coeff_eve[i] = 0.03 * cdouble(gauss(rng), gauss(rng));
    }
    const double budget = 100.0;
    const CorrelationMatrix gram = gram_from_vectors(ch.coeff_ir, ch.coeff_eve);
    const double reference =
        optimize_subspace(gram, 0.0056, 0.0056, budget).outcome.secrecy_bits;

    FourierOptions opts;
    const SecrecyOutcome full = fourier_optimize(ch, 0.0056, 0.0056, budget, opts);
    CHECK(full.diagnostics.note == "full lift");
    CHECK(full.secrecy_bits == doctest::Approx(reference).epsilon(1e-3));

    opts.full_lift_limit = 1;  // force the projected route
    const SecrecyOutcome projected =
        fourier_optimize(ch, 0.0056, 0.0056, budget, opts);
    CHECK(projected.diagnostics.note == "projected span");
    CHECK(projected.secrecy_bits == doctest::Approx(reference).epsilon(1e-6));
}

TEST_CASE("single basis function degenerates to a scalar power split") {
    FourierChannel ch;
    ch.truncation = {0, 0, 0};
    ch.coeff_ir.resize(1);
    ch.coeff_eve.resize(1);
    ch.coeff_ir[0] = cdouble(0.04, 0.01);
    ch.coeff_eve[0] = cdouble(0.01, -0.02);
    const SecrecyOutcome out = fourier_optimize(ch, 0.0056, 0.0056, 100.0);
    // Equal noise: jamming through the shared direction cannot help.
    CHECK(out.power_an <= 1e-3);
    const double g_ir = std::norm(ch.coeff_ir[0]);
    const double g_eve = std::norm(ch.coeff_eve[0]);
    const double expect = std::max(
        0.0, std::log2(1.0 + g_ir * 100.0 / 0.0056) -
                 std::log2(1.0 + g_eve * 100.0 / 0.0056));
    CHECK(out.secrecy_bits == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("truncation ladder: rate grows toward the subspace optimum") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    ScenarioConfig s = default_scenario();
    s.ir.position = Vec3(2.1, -1.3, 18.0);
    s.eve.position = Vec3(-3.0, 2.4, 24.0);

    const auto cor = scenario_correlation(s, rule);
    const double reference =
        optimize_subspace(cor, s.ir.noise_power, s.eve.noise_power,
                          s.power_budget_ma2)
            .outcome.secrecy_bits;

    double prev = -1.0;
    double last = 0.0;
    for (int n : {2, 4, 8, 16, 32, 64}) {
        // The rule must resolve the basis oscillations or the coefficients
        // alias; grow it with the truncation.
        const QuadratureRule coeff_rule = gauss_legendre_rule(
            std::max(20, 2 * n + 12));
        FourierChannel ch = fourier_channel(s.ir, s.eve, {n, n, 0}, s.aperture,
                                            s.consts, coeff_rule);
        ch.coeff_ir *= kCurrentUnitAmps;
        ch.coeff_eve *= kCurrentUnitAmps;
        // Orthonormal expansion: captured energy below the channel energy.
        CHECK(ch.coeff_ir.squaredNorm() <= cor.h_ii * (1.0 + 1e-9));
        CHECK(ch.coeff_eve.squaredNorm() <= cor.h_ee * (1.0 + 1e-9));
        last = fourier_optimize(ch, s.ir.noise_power, s.eve.noise_power,
                                s.power_budget_ma2)
                   .secrecy_bits;
        CHECK(last >= prev - 1e-6);
        CHECK(last <= reference + 1e-6);
        prev = last;
    }
    CHECK(std::abs(reference - last) <= 1e-2);
}

TEST_CASE("discrete-array benchmark at the stock setup") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    const auto scenarios = capa::test::random_scenarios(10, 0xA8A8);
    double capa_mean = 0.0, mimo_mean = 0.0;
    for (const auto& s : scenarios) {
        CHECK(discrete_element_count(s.aperture, s.consts) == 64);
        const auto cor = scenario_correlation(s, rule);
        capa_mean += optimize_subspace(cor, s.ir.noise_power, s.eve.noise_power,
                                       s.power_budget_ma2)
                         .outcome.secrecy_bits;
        const SecrecyOutcome mimo =
            mimo_secrecy(s, SubspaceMethod::PenaltySca);
        mimo_mean += mimo.secrecy_bits;
        CHECK(mimo.power_used <= s.power_budget_ma2 * (1.0 + 1e-9));
    }
    CHECK(capa_mean > mimo_mean);
}

TEST_CASE("discrete Gram matrices are Hermitian positive semidefinite") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    for (const auto& s : capa::test::random_scenarios(5, 0xABBA)) {
        const auto vec_ir = scenario_discrete_vector(s, s.ir);
        const auto vec_eve = scenario_discrete_vector(s, s.eve);
        const CorrelationMatrix gram = gram_from_vectors(vec_ir, vec_eve);
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram.matrix());
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * (gram.h_ii + gram.h_ee));
        CHECK(gram.h_ei() == std::conj(gram.h_ie));
    }
}

TEST_CASE("single-element array falls back to the scalar split") {
    ScenarioConfig s = default_scenario();
    s.aperture.length_x = s.aperture.length_y = 0.0625;  // one element
    s.ir.position = Vec3(0.5, 0.2, 16.0);
    s.eve.position = Vec3(-1.0, 0.4, 28.0);
    const SecrecyOutcome out = mimo_secrecy(s, SubspaceMethod::PenaltySca);
    CHECK(out.diagnostics.note == "parallel channels");
    // Equal noise: no jamming benefit in one spatial dimension.
    CHECK(out.power_an <= 1e-3);
    const double g_ir = std::norm(scenario_discrete_vector(s, s.ir)[0]);
    const double g_eve = std::norm(scenario_discrete_vector(s, s.eve)[0]);
    const double expect = std::max(
        0.0,
        std::log2(1.0 + g_ir * s.power_budget_ma2 / s.ir.noise_power) -
            std::log2(1.0 + g_eve * s.power_budget_ma2 / s.eve.noise_power));
    CHECK(out.secrecy_bits == doctest::Approx(expect).epsilon(1e-4));
}

TEST_CASE("matched-direction design against the other schemes") {
    SUBCASE("orthogonal channels: all designs coincide") {
        const CorrelationMatrix cor =
            capa::test::make_cor(1.0, cdouble(0.0, 0.0), 1.0);
        const double mrt = mrt_mrt_baseline(cor, 1.0, 1.0, 100.0).secrecy_bits;
        const double zf =
            allocate_power(cor, 1.0, 1.0, 100.0).outcome.secrecy_bits;
        const double sub =
            optimize_subspace(cor, 1.0, 1.0, 100.0).outcome.secrecy_bits;
        CHECK(mrt == doctest::Approx(std::log2(101.0)).epsilon(1e-6));
        CHECK(zf == doctest::Approx(mrt).epsilon(1e-6));
        CHECK(sub == doctest::Approx(mrt).epsilon(1e-6));
    }
    SUBCASE("nearly identical channels give zero") {
        const CorrelationMatrix cor =
            capa::test::make_cor(1.0, cdouble(1.0 - 1e-9, 0.0), 1.0);
        CHECK(mrt_mrt_baseline(cor, 1.0, 1.0, 100.0).secrecy_bits <= 1e-6);
    }
    SUBCASE("close receivers favor the zero-forcing design") {
        ScenarioConfig s = default_scenario();
        s.ir.position = Vec3(4, 4, 20);
        s.eve.position = Vec3(5, 5, 20);
        const QuadratureRule rule = gauss_legendre_rule(20);
        const auto cor = scenario_correlation(s, rule);
        const double mrt = mrt_mrt_baseline(cor, s.ir.noise_power,
                                            s.eve.noise_power,
                                            s.power_budget_ma2)
                               .secrecy_bits;
        const double zf = allocate_power(cor, s.ir.noise_power,
                                         s.eve.noise_power, s.power_budget_ma2)
                              .outcome.secrecy_bits;
        CHECK(mrt < zf);
    }
    SUBCASE("never exceeds the subspace optimum") {
        const QuadratureRule rule = gauss_legendre_rule(20);
        for (const auto& s : capa::test::random_scenarios(10, 0x3C3C)) {
            const auto cor = scenario_correlation(s, rule);
            const double mrt = mrt_mrt_baseline(cor, s.ir.noise_power,
                                                s.eve.noise_power,
                                                s.power_budget_ma2)
                                   .secrecy_bits;
            const double sub = optimize_subspace(cor, s.ir.noise_power,
                                                 s.eve.noise_power,
                                                 s.power_budget_ma2)
                                   .outcome.secrecy_bits;
            CHECK(mrt <= sub + 1e-6);
        }
    }
}

TEST_SUITE_END();
