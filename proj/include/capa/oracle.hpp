// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "capa/sca.hpp"

namespace capa {

struct OracleOptions {
    int starts = 64;
    int max_iterations = 400;   // simplex iterations per start
    double simplex_tol = 1e-11;  // stop on relative simplex spread
    std::uint64_t seed = 1;
    bool include_warm_starts = true;  // seed with the closed-form and SCA points
};

/// Derivative-free referee for the subspace problem. The weighting vectors
/// are parameterized by six real coordinates (one global phase removed per
/// vector, first components held real), the power constraint is enforced by
/// scaling onto the metric ellipsoid, and a Nelder-Mead simplex descends
/// from `starts` seeded random points plus (optionally) the two-stage
/// closed-form and SCA solutions. Deterministic for a fixed seed; ties are
/// broken by the lowest start index.
SubspaceResult oracle_search(const CorrelationMatrix& cor, double noise_ir,
                             double noise_eve, double budget,
                             const OracleOptions& opts = {});

}  // namespace capa
