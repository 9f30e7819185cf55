// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "capa/baselines.hpp"
#include "capa/oracle.hpp"

namespace capa {

inline constexpr const char* kPrngName = "mt19937_64";

/// splitmix64 step; used to derive per-realization seeds from the master
/// seed so that rows are reproducible independent of execution order.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

/// Uniform double in [lo, hi) from the top 53 bits of the generator output;
/// fixed mapping so that sampled positions never depend on the standard
/// library's distribution internals.
double uniform_double(std::mt19937_64& rng, double lo, double hi);

struct SampledUsers {
    UserSpec ir;
    UserSpec eve;
    int redraws = 0;
};

/// Draws both receiver positions independently and uniformly over the region
/// box with y-axis polarization, redrawing (and counting) pairs whose
/// channels are numerically parallel. Throws after 100 consecutive redraws.
SampledUsers sample_users(const Region& region, const Aperture& aperture,
                          const EMConstants& consts, const QuadratureRule& rule,
                          double noise_ir, double noise_eve, std::mt19937_64& rng);

enum class SweepAxis { Power, Aperture, Frequency };

std::string axis_name(SweepAxis axis);

struct SweepConfig {
    SweepAxis axis = SweepAxis::Power;
    std::vector<double> axis_values;  // mA^2, m^2 or Hz depending on axis
    int realizations = 200;
    std::uint64_t seed = 0;
    std::vector<std::string> methods = {"subspace", "zf-mrt", "mrt",
                                        "mimo-subspace", "mimo-zf-mrt"};
    int quadrature_order = 20;
    std::filesystem::path output_dir = ".";

    // Scenario defaults for the axes not being swept.
    double aperture_area_m2 = 0.25;
    double frequency_hz = 2.4e9;
    double power_budget_ma2 = 100.0;
    double noise_ir = 5.6e-3;
    double noise_eve = 5.6e-3;
    Region region;
    FourierTruncation fourier;               // used by the "fourier" method
    FourierTruncation fourier_full{3, 0, 0};  // "fourier-full" (lifted) method
    ScaOptions sca;
};

struct SweepRow {
    std::string axis;
    double axis_value = 0.0;
    int realization = 0;
    std::uint64_t seed = 0;
    std::string method;
    double secrecy_bits = 0.0;
    double rate_ir_bits = 0.0;
    double rate_eve_bits = 0.0;
    double power_info_ma2 = 0.0;
    double power_an_ma2 = 0.0;
    int iterations = 0;
    double rank1_gap = 0.0;
    double wallclock_ms = 0.0;
    std::string status = "ok";
};

struct SweepSummaryRow {
    std::string axis;
    double axis_value = 0.0;
    std::string method;
    int count = 0;
    double mean_secrecy_bits = 0.0;
    double mean_rate_ir_bits = 0.0;
    double mean_rate_eve_bits = 0.0;
    double mean_wallclock_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepSummaryRow> summary;
    std::filesystem::path rows_path;
    std::filesystem::path summary_path;
    int total_redraws = 0;
};

/// Evaluates every configured method on every (axis value, realization)
/// scenario and writes the per-row CSV plus a companion per-(axis value,
/// method) summary CSV. Rows are ordered by axis value, realization, method.
/// Per-scenario failures become rows with a non-"ok" status.
SweepResult run_sweep(const SweepConfig& config);

/// Writes rows/summary CSVs and records their paths in the result.
void write_sweep_csv(const SweepConfig& config, SweepResult& result);

/// Parses a sweep CSV written by run_sweep (comment lines skipped).
std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path);
std::vector<SweepSummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Amplitude/phase grids of both current patterns on a uniform aperture
/// grid (endpoints included). Phase is in (-pi, pi], zero where the field
/// vanishes.
struct PatternGrids {
    std::vector<double> xs;
    std::vector<double> ys;
    // Row-major [iy][ix].
    std::vector<double> amp_info, phase_info, amp_an, phase_an;
};

PatternGrids export_pattern(const WeightPair& weights, const ScenarioConfig& scenario,
                            int resolution);

/// Writes the four CSV grids (amplitude and phase per signal) with columns
/// s_x, s_y, value. Returns the file paths.
std::vector<std::filesystem::path> write_pattern_csv(
    const PatternGrids& grids, const std::filesystem::path& output_dir,
    const std::string& prefix);

struct RuntimeCell {
    double aperture_area_m2 = 0.25;
    double frequency_hz = 2.4e9;
};

struct RuntimeConfig {
    std::vector<RuntimeCell> cells = {{0.25, 2.4e9}, {0.5, 2.4e9},
                                      {0.25, 7.8e9}, {0.5, 7.8e9}};
    std::vector<std::string> methods = {"subspace", "fourier-full"};
    int realizations = 10;
    int warmup = 2;  // untimed leading repetitions per cell
    std::uint64_t seed = 0;
    int quadrature_order = 20;
    double power_budget_ma2 = 100.0;
    double noise_ir = 5.6e-3;
    double noise_eve = 5.6e-3;
    Region region;
    FourierTruncation full_lift_truncation{3, 0, 0};  // 7 basis functions
    ScaOptions sca;
    std::filesystem::path output_dir = ".";
};

struct RuntimeRow {
    std::string method;
    double aperture_area_m2 = 0.0;
    double frequency_hz = 0.0;
    double mean_ms = 0.0;
    double std_ms = 0.0;
    int count = 0;
};

struct RuntimeResult {
    std::vector<RuntimeRow> rows;
    std::filesystem::path path;
};

/// Times each method end to end (channel correlation plus optimization) on
/// identical seeded scenarios, single-threaded. Writes one CSV row per
/// (method, cell).
RuntimeResult measure_runtime(const RuntimeConfig& config);

}  // namespace capa
