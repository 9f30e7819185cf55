// SPDX-License-Identifier: Apache-2.0
#include "capa/sca.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace capa {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

MatrixXcd hermitize(const MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

double real_inner(const MatrixXcd& a, const MatrixXcd& b) {
    return (a.array().conjugate() * b.array()).sum().real();
}

double quad_form(const VectorXcd& h, const MatrixXcd& m) {
    return h.dot(m * h).real();
}

/// Euclidean projection of a real vector onto {x >= 0, sum(x) <= bound}.
VectorXd project_nonneg_capped(const VectorXd& y, double bound) {
    VectorXd clipped = y.cwiseMax(0.0);
    if (clipped.sum() <= bound) return clipped;

    // Projection onto the simplex {x >= 0, sum(x) = bound}.
    VectorXd sorted = y;
    std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
    double running = 0.0;
    double theta = 0.0;
    for (int j = 0; j < sorted.size(); ++j) {
        running += sorted[j];
        const double candidate = (running - bound) / (j + 1);
        if (j + 1 == sorted.size() || sorted[j + 1] <= candidate) {
            theta = candidate;
            break;
        }
    }
    return (y.array() - theta).cwiseMax(0.0);
}

struct EigenPair {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es1, es2;
};

/// Joint projection of two Hermitian matrices onto
/// {B1, B2 PSD, tr(B1) + tr(B2) <= bound}: eigenbases are preserved and the
/// concatenated spectra are projected onto the matching vector set.
void project_pair(MatrixXcd& b1, MatrixXcd& b2, double bound) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es1(hermitize(b1));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es2(hermitize(b2));
    const int n1 = static_cast<int>(b1.rows());
    const int n2 = static_cast<int>(b2.rows());
    VectorXd lambda(n1 + n2);
    lambda.head(n1) = es1.eigenvalues();
    lambda.tail(n2) = es2.eigenvalues();
    const VectorXd p = project_nonneg_capped(lambda, bound);
    b1 = es1.eigenvectors() * p.head(n1).asDiagonal() * es1.eigenvectors().adjoint();
    b2 = es2.eigenvectors() * p.tail(n2).asDiagonal() * es2.eigenvectors().adjoint();
    b1 = hermitize(b1);
    b2 = hermitize(b2);
}

/// Problem data mapped into the space where the power constraint is a plain
/// trace bound: B_i = L^H A_i L for the Cholesky factor L of the metric.
struct WhitenedProblem {
    MatrixXcd chol_lower;      // L
    MatrixXcd chol_lower_inv;  // L^{-1}
    VectorXcd chan_ir;         // L^{-1} h_I
    VectorXcd chan_eve;
    MatrixXcd outer_ir;   // chan_ir chan_ir^H
    MatrixXcd outer_eve;  // chan_eve chan_eve^H
    MatrixXcd trace_map;  // L^{-1} L^{-H}; tr(A) = tr(trace_map * B)
    double noise_ir = 0.0, noise_eve = 0.0, budget = 0.0;

    explicit WhitenedProblem(const LiftedProblem& p) {
        Eigen::LLT<MatrixXcd> llt(hermitize(p.power_metric));
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("power metric is not positive definite");
        chol_lower = llt.matrixL();
        chol_lower_inv = chol_lower.triangularView<Eigen::Lower>().solve(
            MatrixXcd::Identity(p.power_metric.rows(), p.power_metric.cols()));
        chan_ir = chol_lower_inv * p.chan_ir;
        chan_eve = chol_lower_inv * p.chan_eve;
        outer_ir = chan_ir * chan_ir.adjoint();
        outer_eve = chan_eve * chan_eve.adjoint();
        trace_map = chol_lower_inv * chol_lower_inv.adjoint();
        noise_ir = p.noise_ir;
        noise_eve = p.noise_eve;
        budget = p.budget;
    }

    MatrixXcd to_whitened(const MatrixXcd& a) const {
        return hermitize(chol_lower.adjoint() * a * chol_lower);
    }
    MatrixXcd from_whitened(const MatrixXcd& b) const {
        return hermitize(chol_lower_inv.adjoint() * b * chol_lower_inv);
    }
};

double metric_power(const LiftedProblem& problem, const LiftedState& state) {
    return (problem.power_metric * (state.info_lift + state.an_lift))
        .trace()
        .real();
}

void check_anchor_feasible(const LiftedProblem& problem, const LiftedState& anchor) {
    auto check_matrix = [](const MatrixXcd& a, const char* name) {
        const double scale = std::max(1.0, a.norm());
        if ((a - a.adjoint()).norm() > 1e-10 * scale)
            throw std::invalid_argument(std::string("anchor ") + name +
                                        " is not Hermitian");
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitize(a));
        const double trace = std::max(a.trace().real(), 1e-300);
        if (es.eigenvalues().minCoeff() < -1e-8 * trace)
            throw std::invalid_argument(std::string("anchor ") + name +
                                        " is not positive semidefinite");
    };
    check_matrix(anchor.info_lift, "info lift");
    check_matrix(anchor.an_lift, "an lift");

    const double power = metric_power(problem, anchor);
    if (power > problem.budget * (1.0 + 1e-6) + 1e-12)
        throw std::invalid_argument("anchor violates the power constraint");

    const double den_eps =
        quad_form(problem.chan_ir, anchor.an_lift) + problem.noise_ir;
    if (den_eps > std::exp(anchor.eps) * (1.0 + 1e-8))
        throw std::invalid_argument("anchor eps inconsistent with its lift");
    const double den_u = quad_form(problem.chan_eve, anchor.info_lift) +
                         quad_form(problem.chan_eve, anchor.an_lift) +
                         problem.noise_eve;
    if (den_u > std::exp(anchor.u) * (1.0 + 1e-8))
        throw std::invalid_argument("anchor u inconsistent with its lift");
}

}  // namespace

Eigen::VectorXcd dominant_eigenvector(const Eigen::MatrixXcd& psd) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitize(psd));
    const auto& vals = es.eigenvalues();
    const int n = static_cast<int>(vals.size());
    const double top = vals[n - 1];

    auto phase_align = [](VectorXcd v) {
        const double norm = v.norm();
        for (int i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > 1e-14 * std::max(1.0, norm)) {
                v *= std::conj(v[i]) / std::abs(v[i]);
                break;
            }
        }
        return v;
    };

    VectorXcd best = phase_align(es.eigenvectors().col(n - 1));
    for (int j = n - 2; j >= 0; --j) {
        if (top - vals[j] > 1e-12 * std::max(std::abs(top), 1e-300)) break;
        // Eigenvalue tie: deterministic lexicographic choice.
        VectorXcd cand = phase_align(es.eigenvectors().col(j));
        for (int i = 0; i < cand.size(); ++i) {
            const double a = cand[i].real(), b = best[i].real();
            if (a == b) continue;
            if (a > b) best = cand;
            break;
        }
    }
    return best;
}

LiftedProblem subspace_problem(const CorrelationMatrix& cor, double noise_ir,
                               double noise_eve, double budget) {
    const EffectiveChannels ch = effective_channels(cor);
    LiftedProblem p;
    p.chan_ir = ch.to_ir;
    p.chan_eve = ch.to_eve;
    p.power_metric = cor.matrix();
    p.rep_ir = Eigen::Vector2cd(1.0, 0.0);
    p.rep_eve = Eigen::Vector2cd(0.0, 1.0);
    p.noise_ir = noise_ir;
    p.noise_eve = noise_eve;
    p.budget = budget;
    return p;
}

LiftedInit lifted_init(const LiftedProblem& problem) {
    // 2x2 Gram of the channel representers under the power metric.
    const cdouble g_ii = problem.rep_ir.dot(problem.power_metric * problem.rep_ir);
    const cdouble g_ee = problem.rep_eve.dot(problem.power_metric * problem.rep_eve);
    const cdouble g_ie = problem.rep_ir.dot(problem.power_metric * problem.rep_eve);
    const double det = g_ii.real() * g_ee.real() - std::norm(g_ie);
    if (std::abs(det) < kDegeneracyThreshold * g_ii.real() * g_ee.real())
        throw DegenerateChannels("degenerate channels: warm start undefined");

    // Zero-forcing coordinates: second column of the inverse Gram.
    const Eigen::Vector2cd u_e(-g_ie / det, cdouble(g_ii.real() / det, 0.0));

    LiftedInit init;
    init.w_info = problem.rep_ir;
    init.w_an = (u_e[0] * problem.rep_ir + u_e[1] * problem.rep_eve) / u_e.norm();

    const double power =
        init.w_info.dot(problem.power_metric * init.w_info).real() +
        init.w_an.dot(problem.power_metric * init.w_an).real();
    const double scale = power > 0.0 ? std::sqrt(problem.budget / power) : 0.0;
    init.w_info *= scale;
    init.w_an *= scale;

    init.eps0 = std::log(std::norm(problem.chan_ir.dot(init.w_an)) + problem.noise_ir);
    init.u0 = std::log(std::norm(problem.chan_eve.dot(init.w_info)) +
                       std::norm(problem.chan_eve.dot(init.w_an)) +
                       problem.noise_eve);
    return init;
}

SubspaceInit init_from_zf_mrt(const CorrelationMatrix& cor, double noise_ir,
                              double noise_eve, double budget) {
    const LiftedInit generic =
        lifted_init(subspace_problem(cor, noise_ir, noise_eve, budget));
    SubspaceInit init;
    init.weights.info = generic.w_info;
    init.weights.an = generic.w_an;
    init.eps0 = generic.eps0;
    init.u0 = generic.u0;
    return init;
}

double rank_one_gap(const LiftedState& state) {
    auto gap = [](const MatrixXcd& a) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitize(a));
        const double spectral = es.eigenvalues().cwiseAbs().maxCoeff();
        return a.trace().real() - spectral;  // nuclear norm = trace for PSD
    };
    return std::max(gap(state.info_lift), gap(state.an_lift));
}

double penalized_objective(const LiftedProblem& problem, const LiftedState& state,
                           double penalty) {
    const double den_tau = quad_form(problem.chan_ir, state.info_lift) +
                           quad_form(problem.chan_ir, state.an_lift) +
                           problem.noise_ir;
    const double den_eps =
        quad_form(problem.chan_ir, state.an_lift) + problem.noise_ir;
    const double den_u = quad_form(problem.chan_eve, state.info_lift) +
                         quad_form(problem.chan_eve, state.an_lift) +
                         problem.noise_eve;
    const double den_v =
        quad_form(problem.chan_eve, state.an_lift) + problem.noise_eve;
    return std::log(den_tau) - std::log(den_eps) - std::log(den_u) +
           std::log(den_v) - penalty * rank_one_gap(state);
}

namespace {

/// Factor-space polish: monotone gradient ascent over the rank-one factors
/// (w1, w2) of the two lifted matrices, in the whitened space where the
/// power constraint is a Euclidean ball. Rank-one points carry no spectral
/// penalty, so the objective is the plain rate; the boundary steepness that
/// stalls the lifted ascent vanishes in this parameterization.
double polish_rank_one(const WhitenedProblem& wp, const ScaOptions& opts,
                       VectorXcd& w1, VectorXcd& w2) {
    auto project = [&](VectorXcd& a, VectorXcd& b) {
        const double power = a.squaredNorm() + b.squaredNorm();
        if (power > wp.budget && power > 0.0) {
            const double s = std::sqrt(wp.budget / power);
            a *= s;
            b *= s;
        }
    };
    auto objective = [&](const VectorXcd& a, const VectorXcd& b) {
        const double q_i1 = std::norm(wp.chan_ir.dot(a));
        const double q_i2 = std::norm(wp.chan_ir.dot(b));
        const double q_e1 = std::norm(wp.chan_eve.dot(a));
        const double q_e2 = std::norm(wp.chan_eve.dot(b));
        return std::log(q_i1 + q_i2 + wp.noise_ir) -
               std::log(q_i2 + wp.noise_ir) -
               std::log(q_e1 + q_e2 + wp.noise_eve) +
               std::log(q_e2 + wp.noise_eve);
    };

    project(w1, w2);
    double f_cur = objective(w1, w2);
    const double scale = std::sqrt(std::max(wp.budget, 1e-300));
    double step = 0.0;
    for (int it = 0; it < opts.pga_max_steps; ++it) {
        const cdouble si1 = wp.chan_ir.dot(w1), si2 = wp.chan_ir.dot(w2);
        const cdouble se1 = wp.chan_eve.dot(w1), se2 = wp.chan_eve.dot(w2);
        const double den_tau = std::norm(si1) + std::norm(si2) + wp.noise_ir;
        const double den_eps = std::norm(si2) + wp.noise_ir;
        const double den_u = std::norm(se1) + std::norm(se2) + wp.noise_eve;
        const double den_v = std::norm(se2) + wp.noise_eve;

        const VectorXcd g1 =
            wp.chan_ir * (si1 / den_tau) - wp.chan_eve * (se1 / den_u);
        const VectorXcd g2 = wp.chan_ir * (si2 / den_tau) -
                             wp.chan_ir * (si2 / den_eps) -
                             wp.chan_eve * (se2 / den_u) +
                             wp.chan_eve * (se2 / den_v);

        const double grad_norm = std::sqrt(g1.squaredNorm() + g2.squaredNorm());
        if (grad_norm <= 0.0) break;
        if (step <= 0.0) step = 0.25 * scale / grad_norm;

        bool accepted = false;
        bool converged = false;
        while (step * grad_norm > 1e-18 * scale) {
            VectorXcd c1 = w1 + step * g1;
            VectorXcd c2 = w2 + step * g2;
            project(c1, c2);
            const double move2 =
                (c1 - w1).squaredNorm() + (c2 - w2).squaredNorm();
            const double f_new = objective(c1, c2);
            if (move2 > 0.0 && f_new >= f_cur + 1e-4 * move2 / step) {
                converged = std::sqrt(move2) <= 1e-13 * scale;
                w1 = std::move(c1);
                w2 = std::move(c2);
                f_cur = f_new;
                accepted = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || converged) break;
    }
    return f_cur;
}

VectorXcd leading_factor(const MatrixXcd& psd) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitize(psd));
    const double lead = std::max(es.eigenvalues().maxCoeff(), 0.0);
    return std::sqrt(lead) * es.eigenvectors().col(es.eigenvalues().size() - 1);
}

}  // namespace

InnerResult solve_inner(const LiftedProblem& problem, const LiftedState& start,
                        const LiftedState& anchor, double penalty,
                        const ScaOptions& opts) {
    if (!(penalty > 0.0)) throw std::invalid_argument("penalty must be positive");
    check_anchor_feasible(problem, anchor);

    const WhitenedProblem wp(problem);
    const VectorXcd y1 = wp.chol_lower_inv * dominant_eigenvector(anchor.info_lift);
    const VectorXcd y2 = wp.chol_lower_inv * dominant_eigenvector(anchor.an_lift);
    const MatrixXcd pen1 = wp.trace_map - y1 * y1.adjoint();
    const MatrixXcd pen2 = wp.trace_map - y2 * y2.adjoint();

    MatrixXcd b1 = wp.to_whitened(start.info_lift);
    MatrixXcd b2 = wp.to_whitened(start.an_lift);
    project_pair(b1, b2, wp.budget);  // absorb rounding in the start point

    // Penalized objective with the exponential auxiliaries eliminated at
    // their tight values and the spectral penalty linearized at the anchor.
    // A single Taylor-anchored solve contracts too slowly for the double
    // loop to ever meet its stop rule, so the auxiliary fixed point is
    // resolved here by monotone projected gradient ascent on this exact
    // form; near the anchor the two objectives agree to first order.
    auto exact_objective = [&](const MatrixXcd& x1, const MatrixXcd& x2) {
        const double q_i1 = quad_form(wp.chan_ir, x1);
        const double q_i2 = quad_form(wp.chan_ir, x2);
        const double q_e1 = quad_form(wp.chan_eve, x1);
        const double q_e2 = quad_form(wp.chan_eve, x2);
        return std::log(q_i1 + q_i2 + wp.noise_ir) -
               std::log(q_i2 + wp.noise_ir) -
               std::log(q_e1 + q_e2 + wp.noise_eve) +
               std::log(q_e2 + wp.noise_eve) -
               penalty * (real_inner(pen1, x1) + real_inner(pen2, x2));
    };

    const double scale = std::max(wp.budget, 1e-300);
    const double f_start = exact_objective(b1, b2);
    double f_cur = f_start;
    double step_size = 0.0;
    int total_steps = 0;
    for (int it = 0; it < opts.pga_max_steps; ++it) {
        const double den_tau = quad_form(wp.chan_ir, b1) +
                               quad_form(wp.chan_ir, b2) + wp.noise_ir;
        const double den_eps = quad_form(wp.chan_ir, b2) + wp.noise_ir;
        const double den_u = quad_form(wp.chan_eve, b1) +
                             quad_form(wp.chan_eve, b2) + wp.noise_eve;
        const double den_v = quad_form(wp.chan_eve, b2) + wp.noise_eve;

        const MatrixXcd g1 = wp.outer_ir / den_tau - wp.outer_eve / den_u -
                             penalty * pen1;
        const MatrixXcd g2 = wp.outer_ir / den_tau - wp.outer_ir / den_eps -
                             wp.outer_eve / den_u + wp.outer_eve / den_v -
                             penalty * pen2;

        const double grad_norm = std::max(g1.norm(), g2.norm());
        if (grad_norm <= 0.0) break;
        if (step_size <= 0.0) step_size = 0.25 * scale / grad_norm;

        bool accepted = false;
        bool converged = false;
        while (step_size * grad_norm > 1e-18 * scale) {
            MatrixXcd c1 = b1 + step_size * g1;
            MatrixXcd c2 = b2 + step_size * g2;
            project_pair(c1, c2, wp.budget);
            const double move2 = (c1 - b1).squaredNorm() + (c2 - b2).squaredNorm();
            const double f_new = exact_objective(c1, c2);
            if (move2 > 0.0 && f_new >= f_cur + 1e-4 * move2 / step_size) {
                converged = std::sqrt(move2) <= opts.pga_step_tol * scale;
                b1 = std::move(c1);
                b2 = std::move(c2);
                f_cur = f_new;
                accepted = true;
                ++total_steps;
                step_size *= 2.0;
                break;
            }
            step_size *= 0.5;
        }
        if (!accepted || converged) break;
    }

    // Assemble a candidate state in problem space with auxiliaries
    // eliminated against the caller's anchors, keeping the point feasible
    // for the linearized constraints.
    auto make_state = [&](const MatrixXcd& a1, const MatrixXcd& a2) {
        LiftedState out;
        out.info_lift = a1;
        out.an_lift = a2;
        const double den_tau = quad_form(problem.chan_ir, a1) +
                               quad_form(problem.chan_ir, a2) + problem.noise_ir;
        const double den_eps = quad_form(problem.chan_ir, a2) + problem.noise_ir;
        const double den_u = quad_form(problem.chan_eve, a1) +
                             quad_form(problem.chan_eve, a2) + problem.noise_eve;
        const double den_v = quad_form(problem.chan_eve, a2) + problem.noise_eve;
        out.tau = std::log(den_tau);
        out.v = std::log(den_v);
        out.eps = anchor.eps - 1.0 + den_eps * std::exp(-anchor.eps);
        out.u = anchor.u - 1.0 + den_u * std::exp(-anchor.u);
        return out;
    };

    // Rank-one polish: ascend over the leading factors and re-lift. The
    // candidates are compared on the exact penalized objective, so the
    // lifted iterate still wins whenever the relaxation genuinely helps.
    VectorXcd w1 = leading_factor(b1);
    VectorXcd w2 = leading_factor(b2);
    polish_rank_one(wp, opts, w1, w2);

    const LiftedState lifted_cand = make_state(wp.from_whitened(b1),
                                               wp.from_whitened(b2));
    const LiftedState polish_cand =
        make_state(wp.from_whitened(w1 * w1.adjoint()),
                   wp.from_whitened(w2 * w2.adjoint()));

    const double g_start = penalized_objective(
        problem, make_state(start.info_lift, start.an_lift), penalty);
    const double g_lifted = penalized_objective(problem, lifted_cand, penalty);
    const double g_polish = penalized_objective(problem, polish_cand, penalty);

    InnerResult result;
    result.pga_steps = total_steps;
    if (std::max(g_lifted, g_polish) < g_start) {
        result.state = start;
        result.objective = g_start;
        result.improved = false;
        return result;
    }
    result.state = g_polish >= g_lifted ? polish_cand : lifted_cand;
    result.objective = std::max(g_polish, g_lifted);
    result.improved = true;
    return result;
}

LiftedResult optimize_lifted(const LiftedProblem& problem, const ScaOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();

    const LiftedInit init = lifted_init(problem);
    LiftedState state;
    state.info_lift = init.w_info * init.w_info.adjoint();
    state.an_lift = init.w_an * init.w_an.adjoint();
    state.eps = init.eps0;
    state.u = init.u0;
    state.tau = std::log(quad_form(problem.chan_ir, state.info_lift) +
                         quad_form(problem.chan_ir, state.an_lift) +
                         problem.noise_ir);
    state.v = std::log(quad_form(problem.chan_eve, state.an_lift) +
                       problem.noise_eve);

    // Penalty start scaled to the objective magnitude of the matched design.
    const Eigen::LLT<MatrixXcd> llt(hermitize(problem.power_metric));
    const double mrt_gain = problem.chan_ir.dot(llt.solve(problem.chan_ir)).real();
    const double objective_scale =
        std::abs(std::log1p(problem.budget * std::max(mrt_gain, 0.0) /
                            problem.noise_ir));
    double penalty = opts.initial_penalty_scale * std::max(objective_scale, 1e-6);

    SolverDiagnostics diag;
    bool non_improving = false;
    for (int outer = 0; outer < opts.max_outer_iterations; ++outer) {
        diag.outer_iterations = outer + 1;
        double g_prev = penalized_objective(problem, state, penalty);
        diag.objective_rounds.push_back({g_prev});
        int inner = 0;
        while (inner < opts.max_inner_iterations) {
            const InnerResult res = solve_inner(problem, state, state, penalty, opts);
            ++inner;
            if (!res.improved) {
                non_improving = true;
                break;
            }
            state = res.state;
            const double g = penalized_objective(problem, state, penalty);
            diag.objective_rounds.back().push_back(g);
            const double gain = g - g_prev;
            g_prev = g;
            if (gain < opts.objective_tol) break;
        }
        diag.inner_iterations_total += inner;
        if (outer == 0) diag.first_round_inner_iterations = inner;

        diag.rank_one_gap = rank_one_gap(state);
        if (diag.rank_one_gap <= opts.rank_one_tol) break;
        penalty *= opts.penalty_growth;
    }
    diag.rank_one_met = diag.rank_one_gap <= opts.rank_one_tol;
    if (!diag.rank_one_met) diag.note = "rank-one unmet";
    if (non_improving && diag.note.empty()) diag.note = "inner solver stalled";

    LiftedResult result;
    auto extract = [](const MatrixXcd& lift) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(hermitize(lift));
        const double lead = std::max(es.eigenvalues().maxCoeff(), 0.0);
        return VectorXcd(std::sqrt(lead) * dominant_eigenvector(lift));
    };
    result.w_info = extract(state.info_lift);
    result.w_an = extract(state.an_lift);
    result.outcome = secrecy_rate_vectors(problem.chan_ir, problem.chan_eve,
                                          result.w_info, result.w_an,
                                          problem.noise_ir, problem.noise_eve);
    result.outcome.power_info =
        result.w_info.dot(problem.power_metric * result.w_info).real();
    result.outcome.power_an =
        result.w_an.dot(problem.power_metric * result.w_an).real();
    result.outcome.power_used =
        result.outcome.power_info + result.outcome.power_an;

    // Rate implied by the lifted matrices themselves, for extraction checks.
    const double den_tau = quad_form(problem.chan_ir, state.info_lift) +
                           quad_form(problem.chan_ir, state.an_lift) +
                           problem.noise_ir;
    const double den_eps =
        quad_form(problem.chan_ir, state.an_lift) + problem.noise_ir;
    const double den_u = quad_form(problem.chan_eve, state.info_lift) +
                         quad_form(problem.chan_eve, state.an_lift) +
                         problem.noise_eve;
    const double den_v =
        quad_form(problem.chan_eve, state.an_lift) + problem.noise_eve;
    diag.lifted_rate_bits = std::max(
        0.0, bits_from_nats(std::log(den_tau / den_eps) - std::log(den_u / den_v)));

    diag.wallclock_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    result.outcome.diagnostics = diag;
    result.final_state = std::move(state);
    return result;
}

SubspaceResult optimize_subspace(const CorrelationMatrix& cor, double noise_ir,
                                 double noise_eve, double budget,
                                 const ScaOptions& opts) {
    const LiftedResult lifted =
        optimize_lifted(subspace_problem(cor, noise_ir, noise_eve, budget), opts);
    SubspaceResult result;
    result.weights.info = lifted.w_info;
    result.weights.an = lifted.w_an;
    result.outcome = secrecy_rate_closed(result.weights, cor, noise_ir, noise_eve);
    result.outcome.diagnostics = lifted.outcome.diagnostics;
    return result;
}

}  // namespace capa
