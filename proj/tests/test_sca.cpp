// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"

using namespace capa;
using capa::test::make_cor;

namespace {

LiftedState state_from_weights(const LiftedProblem& problem,
                               const Eigen::VectorXcd& w_info,
                               const Eigen::VectorXcd& w_an) {
    LiftedState s;
    s.info_lift = w_info * w_info.adjoint();
    s.an_lift = w_an * w_an.adjoint();
    const auto quad = [&](const Eigen::VectorXcd& h, const Eigen::MatrixXcd& a) {
        return h.dot(a * h).real();
    };
    s.tau = std::log(quad(problem.chan_ir, s.info_lift) +
                     quad(problem.chan_ir, s.an_lift) + problem.noise_ir);
    s.eps = std::log(quad(problem.chan_ir, s.an_lift) + problem.noise_ir);
    s.u = std::log(quad(problem.chan_eve, s.info_lift) +
                   quad(problem.chan_eve, s.an_lift) + problem.noise_eve);
    s.v = std::log(quad(problem.chan_eve, s.an_lift) + problem.noise_eve);
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("sca");

TEST_CASE("warm start follows the closed-form directions") {
    SUBCASE("coupled matrix") {
        const CorrelationMatrix cor = make_cor(2.0, cdouble(1.0, 0.0), 1.0);
        const SubspaceInit init = init_from_zf_mrt(cor, 1.0, 1.0, 100.0);
        // info weights along e1, jamming weights along [-1, 2]/sqrt(5), both
        // rescaled to spend the budget exactly.
        CHECK(std::abs(init.weights.info[1]) <= 1e-12 * init.weights.info.norm());
        const Eigen::Vector2cd expected =
            Eigen::Vector2cd(-1.0, 2.0) / std::sqrt(5.0);
        const Eigen::Vector2cd direction =
            init.weights.an / init.weights.an.norm();
        CHECK((direction - expected).norm() <= 1e-12);
        CHECK(weights_power(init.weights, cor) == doctest::Approx(100.0));
    }
    SUBCASE("orthogonal channels") {
        const CorrelationMatrix cor = make_cor(1.0, cdouble(0.0, 0.0), 1.0);
        const SubspaceInit init = init_from_zf_mrt(cor, 1.0, 1.0, 100.0);
        CHECK(std::abs(init.weights.an[0]) <= 1e-14 * init.weights.an.norm());
        CHECK(std::abs(init.weights.info[1]) <= 1e-14);
        CHECK(weights_power(init.weights, cor) == doctest::Approx(100.0));
    }
    SUBCASE("auxiliaries match their defining denominators") {
        const CorrelationMatrix cor = make_cor(2.0, cdouble(0.5, 0.2), 1.0);
        const SubspaceInit init = init_from_zf_mrt(cor, 0.7, 0.3, 10.0);
        const EffectiveChannels ch = effective_channels(cor);
        const double den_eps = std::norm(ch.to_ir.dot(init.weights.an)) + 0.7;
        const double den_u = std::norm(ch.to_eve.dot(init.weights.info)) +
                             std::norm(ch.to_eve.dot(init.weights.an)) + 0.3;
        CHECK(init.eps0 == doctest::Approx(std::log(den_eps)).epsilon(1e-12));
        CHECK(init.u0 == doctest::Approx(std::log(den_u)).epsilon(1e-12));
        // With no jamming signal the auxiliary collapses to the noise floor.
        LiftedProblem p = subspace_problem(cor, 0.7, 0.3, 10.0);
        const LiftedState zero_an = state_from_weights(
            p, init.weights.info, Eigen::Vector2cd::Zero());
        CHECK(zero_an.eps == doctest::Approx(std::log(0.7)).epsilon(1e-12));
    }
}

TEST_CASE("identical channels pin the objective at zero") {
    // Euclidean-metric problem with coinciding channel vectors: every
    // feasible point has equal rates at both receivers.
    LiftedProblem p;
    Eigen::VectorXcd chan(2);
    chan << cdouble(1.0, 0.0), cdouble(1.0, 0.0);
    p.chan_ir = p.chan_eve = chan;
    p.power_metric = Eigen::MatrixXcd::Identity(2, 2);
    p.rep_ir = chan;
    Eigen::VectorXcd other(2);
    other << cdouble(1.0, 0.0), cdouble(-1.0, 0.0);
    p.rep_eve = other;  // independent representer so the warm start exists
    p.noise_ir = p.noise_eve = 1.0;
    p.budget = 100.0;

    const LiftedInit init = lifted_init(p);
    LiftedState state = state_from_weights(p, init.w_info, init.w_an);
    const InnerResult res = solve_inner(p, state, state, 1e-3);
    CHECK(res.state.tau - res.state.eps - res.state.u + res.state.v <= 1e-8);
}

TEST_CASE("repeated solves on the same anchors never lose ground") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    const auto scenarios = capa::test::random_scenarios(5, 0x50CA);
    for (const auto& s : scenarios) {
        const auto cor = scenario_correlation(s, rule);
        const LiftedProblem p =
            subspace_problem(cor, s.ir.noise_power, s.eve.noise_power, 100.0);
        const LiftedInit init = lifted_init(p);
        const LiftedState anchor = state_from_weights(p, init.w_info, init.w_an);
        const InnerResult first = solve_inner(p, anchor, anchor, 1e-3);
        const InnerResult second = solve_inner(p, first.state, anchor, 1e-3);
        CHECK(second.objective >= first.objective - 1e-9);
    }
}

TEST_CASE("infeasible anchors are rejected") {
    const CorrelationMatrix cor = make_cor(2.0, cdouble(0.5, 0.0), 1.0);
    const LiftedProblem p = subspace_problem(cor, 1.0, 1.0, 10.0);
    const LiftedInit init = lifted_init(p);
    LiftedState state = state_from_weights(p, init.w_info, init.w_an);

    SUBCASE("overdrawn power") {
        LiftedState bad = state;
        bad.info_lift *= 50.0;
        CHECK_THROWS_AS(solve_inner(p, state, bad, 1e-3), std::invalid_argument);
    }
    SUBCASE("auxiliary below its denominator") {
        LiftedState bad = state;
        bad.eps = state.eps - 1.0;
        CHECK_THROWS_AS(solve_inner(p, state, bad, 1e-3), std::invalid_argument);
    }
    SUBCASE("non-positive penalty") {
        CHECK_THROWS_AS(solve_inner(p, state, state, 0.0), std::invalid_argument);
    }
}

TEST_CASE("orthogonal channels: full budget on the information signal") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(0.0, 0.0), 1.0);
    const SubspaceResult res = optimize_subspace(cor, 1.0, 1.0, 100.0);
    CHECK(res.outcome.secrecy_bits ==
          doctest::Approx(std::log2(101.0)).epsilon(1e-9));
    CHECK(res.weights.an.norm() <= 1e-4);
    CHECK(res.outcome.diagnostics.rank_one_met);
}

TEST_CASE("nearly identical channels give almost no secrecy") {
    const CorrelationMatrix cor = make_cor(1.0, cdouble(1.0 - 1e-9, 0.0), 1.0);
    const SubspaceResult res = optimize_subspace(cor, 1.0, 1.0, 100.0);
    CHECK(res.outcome.secrecy_bits <= 1e-3);
}

TEST_CASE("optimizer contracts on stock random scenarios") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    double budget_scale = 100.0;
    SUBCASE("low budget") { budget_scale = 10.0; }
    SUBCASE("stock budget") { budget_scale = 100.0; }
    SUBCASE("high budget") { budget_scale = 1e4; }
    for (const auto& s : capa::test::random_scenarios(15, 0xA1CA)) {
        const double budget = budget_scale;
        const auto cor = scenario_correlation(s, rule);
        const SubspaceResult res =
            optimize_subspace(cor, s.ir.noise_power, s.eve.noise_power, budget);
        const auto& d = res.outcome.diagnostics;

        // Never below the closed-form two-stage design.
        const double zf = allocate_power(cor, s.ir.noise_power,
                                         s.eve.noise_power, budget)
                              .outcome.secrecy_bits;
        CHECK(res.outcome.secrecy_bits >= zf - 1e-6);

        // Power feasible, rank-one certificate met, extraction faithful.
        CHECK(weights_power(res.weights, cor) <= budget * (1.0 + 1e-9));
        CHECK(d.rank_one_met);
        CHECK(d.rank_one_gap <= 1e-6);
        CHECK(std::abs(res.outcome.secrecy_bits - d.lifted_rate_bits) <= 1e-4);

        // Objective trace is non-decreasing within each penalty round.
        for (const auto& round : d.objective_rounds)
            for (std::size_t i = 1; i < round.size(); ++i)
                CHECK(round[i] >= round[i - 1] - 1e-9);
    }
}

TEST_CASE("lifted matrices stay Hermitian positive semidefinite") {
    const QuadratureRule rule = gauss_legendre_rule(20);
    const auto scenarios = capa::test::random_scenarios(5, 0xF00D);
    for (const auto& s : scenarios) {
        const auto cor = scenario_correlation(s, rule);
        const LiftedProblem p =
            subspace_problem(cor, s.ir.noise_power, s.eve.noise_power, 100.0);
        const LiftedInit init = lifted_init(p);
        LiftedState state = state_from_weights(p, init.w_info, init.w_an);
        const InnerResult res = solve_inner(p, state, state, 1e-3);
        for (const Eigen::MatrixXcd& a :
             {res.state.info_lift, res.state.an_lift}) {
            CHECK((a - a.adjoint()).norm() <= 1e-12 * (1.0 + a.norm()));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
            CHECK(es.eigenvalues().minCoeff() >=
                  -1e-10 * std::max(a.trace().real(), 1.0));
        }
        // Linearized-constraint feasibility of the returned point.
        const auto quad = [&](const Eigen::VectorXcd& h, const Eigen::MatrixXcd& a) {
            return h.dot(a * h).real();
        };
        const double den_eps = quad(p.chan_ir, res.state.an_lift) + p.noise_ir;
        CHECK(den_eps <=
              std::exp(state.eps) * (res.state.eps - state.eps + 1.0) + 1e-8);
        const double den_u = quad(p.chan_eve, res.state.info_lift) +
                             quad(p.chan_eve, res.state.an_lift) + p.noise_eve;
        CHECK(den_u <= std::exp(state.u) * (res.state.u - state.u + 1.0) + 1e-8);
        CHECK(std::exp(res.state.tau) <=
              quad(p.chan_ir, res.state.info_lift) +
                  quad(p.chan_ir, res.state.an_lift) + p.noise_ir + 1e-8);
    }
}

TEST_CASE("dominant eigenvector tie-breaking is deterministic") {
    // Exactly degenerate spectrum: the identity.
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::VectorXcd v1 = dominant_eigenvector(eye);
    const Eigen::VectorXcd v2 = dominant_eigenvector(eye);
    CHECK((v1 - v2).norm() == 0.0);
    // First component is real non-negative after the phase gauge.
    CHECK(v1[0].imag() == doctest::Approx(0.0));
    CHECK(v1[0].real() >= 0.0);
}

TEST_SUITE_END();
