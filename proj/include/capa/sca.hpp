// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>

#include "capa/secrecy.hpp"
#include "capa/zf_mrt.hpp"

namespace capa {

/// Options for the penalty-based double-loop successive convex approximation.
struct ScaOptions {
    double rank_one_tol = 1e-6;        // terminal nuclear-minus-spectral gap
    double objective_tol = 1e-6;       // inner stop on objective gain, nats
    int max_inner_iterations = 50;
    int max_outer_iterations = 20;
    double initial_penalty_scale = 1e-3;  // times the objective scale estimate
    double penalty_growth = 10.0;
    int pga_max_steps = 4000;     // ascent-step budget per inner solve
    double pga_step_tol = 1e-12;  // relative step-norm stop
};

/// Lifted iterate: positive-semidefinite matrices for the information and
/// jamming covariates plus the exponential-form auxiliaries (in nats).
struct LiftedState {
    Eigen::MatrixXcd info_lift;
    Eigen::MatrixXcd an_lift;
    double tau = 0.0;
    double eps = 0.0;
    double u = 0.0;
    double v = 0.0;
};

/// Smallest data set the lifted solver needs. For the two-dimensional
/// channel-subspace problem the decision space is the weighting-vector space:
/// chan_* are the effective channels, the power metric is the correlation
/// matrix and the representers are the unit vectors. For an orthonormal
/// basis expansion the decision space is coefficient space: chan_* and the
/// representers are the channel coefficient vectors and the metric is the
/// identity.
struct LiftedProblem {
    Eigen::VectorXcd chan_ir;
    Eigen::VectorXcd chan_eve;
    Eigen::MatrixXcd power_metric;
    Eigen::VectorXcd rep_ir;
    Eigen::VectorXcd rep_eve;
    double noise_ir = 1.0;
    double noise_eve = 1.0;
    double budget = 1.0;
};

LiftedProblem subspace_problem(const CorrelationMatrix& cor, double noise_ir,
                               double noise_eve, double budget);

/// Matched/zero-forcing warm start: w_info = rep_ir, w_an = the zero-forcing
/// combination of the representers normalized by its coordinate norm, both
/// rescaled by a common factor to radiate exactly the budget. Returns the
/// weight vectors together with the initial auxiliaries
///   eps0 = ln(tr(H_I A2) + noise_ir),  u0 = ln(tr(H_E (A1+A2)) + noise_eve).
struct LiftedInit {
    Eigen::VectorXcd w_info;
    Eigen::VectorXcd w_an;
    double eps0 = 0.0;
    double u0 = 0.0;
};
LiftedInit lifted_init(const LiftedProblem& problem);

/// Two-dimensional form of the warm start (weights plus auxiliaries).
struct SubspaceInit {
    WeightPair weights;
    double eps0 = 0.0;
    double u0 = 0.0;
};
SubspaceInit init_from_zf_mrt(const CorrelationMatrix& cor, double noise_ir,
                              double noise_eve, double budget);

struct InnerResult {
    LiftedState state;
    double objective = 0.0;  // penalized objective at the returned state
    int pga_steps = 0;
    bool improved = true;  // false when the solver could not move off the start
};

/// Solves one convexified subproblem for fixed penalty and anchors: the
/// auxiliaries are eliminated at their constraint-tight values, leaving a
/// smooth concave function of the two lifted matrices over the
/// {PSD, power <= budget} set, maximized by projected gradient ascent with
/// eigenvalue-clipping projection and backtracking line search.
///
/// `start` supplies the initial point, `anchor` the linearization anchors
/// (eps, u and the spectral subgradients). Throws std::invalid_argument when
/// the anchor is infeasible.
InnerResult solve_inner(const LiftedProblem& problem, const LiftedState& start,
                        const LiftedState& anchor, double penalty,
                        const ScaOptions& opts = {});

/// Penalized objective tau - eps - u + v - penalty * sum_i(||A_i||_* -
/// ||A_i||_2) with tau, v recomputed tight for the state's matrices.
double penalized_objective(const LiftedProblem& problem, const LiftedState& state,
                           double penalty);

/// Nuclear-minus-spectral gap max over the two lifted matrices.
double rank_one_gap(const LiftedState& state);

struct LiftedResult {
    Eigen::VectorXcd w_info;
    Eigen::VectorXcd w_an;
    SecrecyOutcome outcome;
    LiftedState final_state;
};

/// Penalty-based double-loop optimizer: the inner loop iterates solve_inner
/// until the objective gain drops below objective_tol, the outer loop grows
/// the penalty until the rank-one gap meets rank_one_tol. Weight vectors are
/// the dominant eigenvectors of the lifted matrices scaled by the square
/// root of the dominant eigenvalue.
LiftedResult optimize_lifted(const LiftedProblem& problem, const ScaOptions& opts = {});

struct SubspaceResult {
    WeightPair weights;
    SecrecyOutcome outcome;
};

/// Channel-subspace optimizer over the two weighting vectors.
SubspaceResult optimize_subspace(const CorrelationMatrix& cor, double noise_ir,
                                 double noise_eve, double budget,
                                 const ScaOptions& opts = {});

/// Dominant eigenvector of a Hermitian PSD matrix with deterministic
/// tie-breaking: for eigenvalues within 1e-12 relative, the eigenvector with
/// lexicographically larger real part of its first component wins.
Eigen::VectorXcd dominant_eigenvector(const Eigen::MatrixXcd& psd);

}  // namespace capa
