// SPDX-License-Identifier: Apache-2.0
#include "capa/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "capa/experiment.hpp"

namespace capa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

struct ScenarioDraw {
    ScenarioConfig scenario;
    std::uint64_t seed = 0;
};

std::vector<ScenarioDraw> sample_scenarios(int count, std::uint64_t master) {
    const ScenarioConfig base = default_scenario();
    const Region region;
    const QuadratureRule rule = gauss_legendre_rule(base.quadrature_order);
    std::vector<ScenarioDraw> out;
    out.reserve(count);
    for (int r = 0; r < count; ++r) {
        ScenarioDraw draw;
        draw.seed = derive_seed(master, 7, r);
        std::mt19937_64 rng(draw.seed);
        const SampledUsers users =
            sample_users(region, base.aperture, base.consts, rule,
                         base.ir.noise_power, base.eve.noise_power, rng);
        draw.scenario = base;
        draw.scenario.ir = users.ir;
        draw.scenario.eve = users.eve;
        out.push_back(std::move(draw));
    }
    return out;
}

// Quadrature inner product <a, b> = integral of conj(a) b over the aperture
// for fields sampled on the rule's tensor grid.
cdouble grid_inner(const std::vector<cdouble>& a, const std::vector<cdouble>& b,
                   const QuadratureRule& rule, const Aperture& ap) {
    cdouble acc(0.0, 0.0);
    for (int my = 0; my < rule.order; ++my)
        for (int mx = 0; mx < rule.order; ++mx) {
            const std::size_t k = static_cast<std::size_t>(my) * rule.order + mx;
            acc += rule.weights[mx] * rule.weights[my] * std::conj(a[k]) * b[k];
        }
    return 0.25 * ap.length_x * ap.length_y * acc;
}

WeightPair random_weights(std::mt19937_64& rng, const CorrelationMatrix& cor,
                          double budget) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    WeightPair w;
    w.info << cdouble(gauss(rng), gauss(rng)), cdouble(gauss(rng), gauss(rng));
    w.an << cdouble(gauss(rng), gauss(rng)), cdouble(gauss(rng), gauss(rng));
    const double power = weights_power(w, cor);
    const double target = budget * (0.2 + 0.79 * uniform_double(rng, 0.0, 1.0));
    const double scale = std::sqrt(target / power);
    w.info *= scale;
    w.an *= scale;
    return w;
}

// --- criterion bodies -----------------------------------------------------

CriterionResult criterion_zf_null(const std::filesystem::path&) {
    CriterionResult res{1, "zero-forcing null at the IR", false, "", 0.0, 10.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(100, 0xC001);
    const QuadratureRule rule = gauss_legendre_rule(20);

    double worst_alg = 0.0, worst_quad = 0.0;
    for (const auto& d : draws) {
        const auto& s = d.scenario;
        const CorrelationMatrix cor =
            correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule);
        const auto [u_e, u_ee] = zf_weights(cor);

        const Eigen::Vector2cd hbar_ir(cdouble(cor.h_ii, 0.0), cor.h_ie);
        const cdouble null_residual = hbar_ir[0] * u_e[0] + hbar_ir[1] * u_e[1];
        const double alg = std::abs(null_residual) / (hbar_ir.norm() * u_e.norm());
        worst_alg = std::max(worst_alg, alg);

        const auto grid = tensor_grid_points(rule, s.aperture);
        const auto j_an = reconstruct_current(u_e, s.ir, s.eve, s.aperture,
                                              s.consts, grid);
        const auto h_ir = sample_field(
            [&](const Vec3& p) { return scalar_channel(s.ir, p, s.aperture, s.consts); },
            rule, s.aperture);
        const double num = std::abs(grid_inner(h_ir, j_an, rule, s.aperture));
        const double den =
            std::sqrt(grid_inner(h_ir, h_ir, rule, s.aperture).real() *
                      grid_inner(j_an, j_an, rule, s.aperture).real());
        worst_quad = std::max(worst_quad, num / den);
    }
    res.seconds = seconds_since(t0);
    res.passed = worst_alg <= 1e-10 && worst_quad <= 1e-9 &&
                 res.seconds < res.budget_seconds;
    res.detail = fmt("max algebraic residual %.2e, max field residual %.2e",
                     worst_alg, worst_quad);
    return res;
}

CriterionResult criterion_closed_vs_direct(const std::filesystem::path&) {
    CriterionResult res{2, "closed-form vs quadrature rate identity", false, "",
                        0.0, 30.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(100, 0xC002);
    const QuadratureRule rule = gauss_legendre_rule(20);

    double worst = 0.0;
    for (const auto& d : draws) {
        const auto& s = d.scenario;
        const CorrelationMatrix cor =
            correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule);
        const auto grid = tensor_grid_points(rule, s.aperture);
        std::mt19937_64 rng(derive_seed(d.seed, 2, 0));
        for (int k = 0; k < 10; ++k) {
            const WeightPair w = random_weights(rng, cor, 1e-4);
            const double closed =
                secrecy_rate_closed(w, cor, s.ir.noise_power, s.eve.noise_power)
                    .secrecy_bits;
            const auto j_info =
                reconstruct_current(w.info, s.ir, s.eve, s.aperture, s.consts, grid);
            const auto j_an =
                reconstruct_current(w.an, s.ir, s.eve, s.aperture, s.consts, grid);
            const double direct =
                secrecy_rate_direct(j_info, j_an, s.ir, s.eve, rule, s.aperture,
                                    s.consts)
                    .secrecy_bits;
            worst = std::max(worst, rel_diff(closed, direct));
        }
    }
    res.seconds = seconds_since(t0);
    res.passed = worst <= 1e-9 && res.seconds < res.budget_seconds;
    res.detail = fmt("max relative rate mismatch %.2e over 1000 weight pairs", worst);
    return res;
}

CriterionResult criterion_orthogonal_augmentation(const std::filesystem::path&) {
    CriterionResult res{3, "channel-orthogonal current component is free", false,
                        "", 0.0, 30.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(100, 0xC003);
    const QuadratureRule rule = gauss_legendre_rule(20);

    double worst_rate = 0.0;
    double min_power_gain = 1e300;
    for (const auto& d : draws) {
        const auto& s = d.scenario;
        const auto grid = tensor_grid_points(rule, s.aperture);
        const auto& ap = s.aperture;

        auto h_ir = sample_field(
            [&](const Vec3& p) { return scalar_channel(s.ir, p, ap, s.consts); },
            rule, ap);
        auto h_eve = sample_field(
            [&](const Vec3& p) { return scalar_channel(s.eve, p, ap, s.consts); },
            rule, ap);

        // Orthonormalize the two channels, then project the probe field off
        // their span.
        auto scale_into = [&](std::vector<cdouble>& v, double inv_norm) {
            for (auto& x : v) x *= inv_norm;
        };
        auto axpy = [&](std::vector<cdouble>& v, const cdouble& a,
                        const std::vector<cdouble>& w) {
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= a * w[i];
        };
        std::vector<cdouble> q1 = h_ir;
        scale_into(q1, 1.0 / std::sqrt(grid_inner(q1, q1, rule, ap).real()));
        std::vector<cdouble> q2 = h_eve;
        axpy(q2, grid_inner(q1, q2, rule, ap), q1);
        scale_into(q2, 1.0 / std::sqrt(grid_inner(q2, q2, rule, ap).real()));

        std::vector<cdouble> delta = sample_field(
            [&](const Vec3& p) {
                return std::polar(1.0, 2.0 * M_PI * (p.x() + p.y()) / ap.length_x);
            },
            rule, ap);
        axpy(delta, grid_inner(q1, delta, rule, ap), q1);
        axpy(delta, grid_inner(q2, delta, rule, ap), q2);

        std::mt19937_64 rng(derive_seed(d.seed, 3, 0));
        const CorrelationMatrix cor =
            correlation_matrix(s.ir, s.eve, ap, s.consts, rule);
        const WeightPair w = random_weights(rng, cor, 1e-4);
        auto j_info = reconstruct_current(w.info, s.ir, s.eve, ap, s.consts, grid);
        const auto j_an = reconstruct_current(w.an, s.ir, s.eve, ap, s.consts, grid);

        const double beta =
            0.5 * std::sqrt(grid_inner(j_info, j_info, rule, ap).real() /
                            grid_inner(delta, delta, rule, ap).real());
        std::vector<cdouble> j_aug = j_info;
        for (std::size_t i = 0; i < j_aug.size(); ++i) j_aug[i] += beta * delta[i];

        const SecrecyOutcome base =
            secrecy_rate_direct(j_info, j_an, s.ir, s.eve, rule, ap, s.consts);
        const SecrecyOutcome aug =
            secrecy_rate_direct(j_aug, j_an, s.ir, s.eve, rule, ap, s.consts);
        worst_rate = std::max(worst_rate, rel_diff(base.secrecy_bits, aug.secrecy_bits));
        min_power_gain =
            std::min(min_power_gain, (aug.power_info - base.power_info) /
                                         std::max(base.power_info, 1e-300));
    }
    res.seconds = seconds_since(t0);
    res.passed = worst_rate <= 1e-8 && min_power_gain > 0.0 &&
                 res.seconds < res.budget_seconds;
    res.detail = fmt("max relative rate change %.2e, min relative power gain %.2e",
                     worst_rate, min_power_gain);
    return res;
}

CriterionResult criterion_sca_mechanics(const std::filesystem::path&) {
    CriterionResult res{4, "penalty-SCA mechanics", false, "", 0.0, 120.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(50, 0xC004);
    const QuadratureRule rule = gauss_legendre_rule(20);

    double worst_drop = 0.0, worst_gap = 0.0, worst_extract = 0.0;
    int worst_first_round = 0;
    bool all_rank_one = true;
    for (const auto& d : draws) {
        const CorrelationMatrix cor = scenario_correlation(d.scenario, rule);
        const SubspaceResult r =
            optimize_subspace(cor, d.scenario.ir.noise_power,
                              d.scenario.eve.noise_power,
                              d.scenario.power_budget_ma2);
        const auto& diag = r.outcome.diagnostics;
        for (const auto& round : diag.objective_rounds)
            for (std::size_t i = 1; i < round.size(); ++i)
                worst_drop = std::max(worst_drop, round[i - 1] - round[i]);
        worst_gap = std::max(worst_gap, diag.rank_one_gap);
        all_rank_one = all_rank_one && diag.rank_one_met;
        worst_extract = std::max(
            worst_extract,
            std::abs(r.outcome.secrecy_bits - diag.lifted_rate_bits));
        worst_first_round =
            std::max(worst_first_round, diag.first_round_inner_iterations);
    }
    res.seconds = seconds_since(t0);
    res.passed = worst_drop <= 1e-9 && all_rank_one && worst_gap <= 1e-6 &&
                 worst_extract <= 1e-4 && worst_first_round <= 3 &&
                 res.seconds < res.budget_seconds;
    std::ostringstream detail;
    detail << fmt("max objective drop %.2e, max rank-one gap %.2e, ", worst_drop,
                  worst_gap)
           << fmt("max extraction gap %.2e bits, ", worst_extract)
           << "max warm-started inner iterations " << worst_first_round;
    res.detail = detail.str();
    return res;
}

CriterionResult criterion_oracle(const std::filesystem::path&) {
    CriterionResult res{5, "oracle certification of the optimizers", false, "",
                        0.0, 300.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(50, 0xC005);
    const QuadratureRule rule = gauss_legendre_rule(20);

    int agree = 0;
    bool ordering = true;
    double worst_gap = 0.0, worst_order = 0.0;
    for (const auto& d : draws) {
        const auto& s = d.scenario;
        const CorrelationMatrix cor = scenario_correlation(s, rule);
        const double budget = s.power_budget_ma2;  // 100 mA^2
        const double sca =
            optimize_subspace(cor, s.ir.noise_power, s.eve.noise_power, budget)
                .outcome.secrecy_bits;
        const double zf =
            allocate_power(cor, s.ir.noise_power, s.eve.noise_power, budget)
                .outcome.secrecy_bits;
        const double mrt =
            mrt_mrt_baseline(cor, s.ir.noise_power, s.eve.noise_power, budget)
                .secrecy_bits;
        OracleOptions opts;
        opts.seed = derive_seed(d.seed, 5, 0);
        const double oracle =
            oracle_search(cor, s.ir.noise_power, s.eve.noise_power, budget, opts)
                .outcome.secrecy_bits;

        const double gap = std::abs(sca - oracle);
        worst_gap = std::max(worst_gap, gap);
        if (gap <= 1e-2) ++agree;
        const double order = std::max(zf, mrt) - sca;
        worst_order = std::max(worst_order, order);
        ordering = ordering && order <= 1e-6;
    }
    res.seconds = seconds_since(t0);
    res.passed = agree >= 48 && ordering && res.seconds < res.budget_seconds;
    std::ostringstream detail;
    detail << agree << "/50 within 1e-2 bits of the oracle (max gap "
           << fmt("%.2e", worst_gap) << "), max closed-form excess "
           << fmt("%.2e bits", worst_order);
    res.detail = detail.str();
    return res;
}

double summary_mean(const std::vector<SweepSummaryRow>& summary, double value,
                    const std::string& method) {
    for (const auto& s : summary)
        if (s.axis_value == value && s.method == method) return s.mean_secrecy_bits;
    throw std::runtime_error("summary row missing: " + method);
}

CriterionResult criterion_power_trend(const std::filesystem::path& work_dir) {
    CriterionResult res{6, "secrecy-rate gains versus transmit power", false, "",
                        0.0, 900.0};
    const auto t0 = Clock::now();

    SweepConfig config;
    config.axis = SweepAxis::Power;
    config.axis_values = {10.0, 1e3, 1e4};
    config.realizations = 200;
    config.seed = 0xC006;
    config.methods = {"subspace", "zf-mrt", "mimo-subspace", "mimo-zf-mrt"};
    config.output_dir = work_dir / "power_trend";
    const SweepResult sweep = run_sweep(config);

    const double capa_sca = summary_mean(sweep.summary, 1e3, "subspace");
    const double mimo_sca = summary_mean(sweep.summary, 1e3, "mimo-subspace");
    const double capa_zf = summary_mean(sweep.summary, 1e3, "zf-mrt");
    const double mimo_zf = summary_mean(sweep.summary, 1e3, "mimo-zf-mrt");
    const double sca_gain = capa_sca / mimo_sca - 1.0;
    const double zf_gain = capa_zf / mimo_zf - 1.0;

    const double gap_low = summary_mean(sweep.summary, 10.0, "subspace") -
                           summary_mean(sweep.summary, 10.0, "zf-mrt");
    const double gap_high = summary_mean(sweep.summary, 1e4, "subspace") -
                            summary_mean(sweep.summary, 1e4, "zf-mrt");

    res.seconds = seconds_since(t0);
    res.passed = sca_gain >= 0.60 && sca_gain <= 1.10 && zf_gain >= 0.45 &&
                 zf_gain <= 0.90 && gap_high < gap_low &&
                 res.seconds < res.budget_seconds;
    std::ostringstream detail;
    detail << fmt("subspace gain %.1f%%, two-stage gain %.1f%%, ", 100 * sca_gain,
                  100 * zf_gain)
           << fmt("SCA-vs-two-stage gap %.4f bits at 1e4 vs %.4f at 10", gap_high,
                  gap_low);
    res.detail = detail.str();
    return res;
}

CriterionResult criterion_aperture_trend(const std::filesystem::path& work_dir) {
    CriterionResult res{7, "secrecy-rate gains versus aperture size", false, "",
                        0.0, 900.0};
    const auto t0 = Clock::now();

    SweepConfig config;
    config.axis = SweepAxis::Aperture;
    config.axis_values = {0.1, 0.25, 0.5};
    config.realizations = 200;
    config.seed = 0xC007;
    config.methods = {"subspace", "zf-mrt", "mrt", "mimo-subspace", "mimo-zf-mrt"};
    config.output_dir = work_dir / "aperture_trend";
    const SweepResult sweep = run_sweep(config);

    bool monotone = true;
    for (const std::string& method : config.methods) {
        double prev = -1.0;
        for (double value : config.axis_values) {
            const double mean = summary_mean(sweep.summary, value, method);
            monotone = monotone && mean > prev;
            prev = mean;
        }
    }
    const double gain_mid = summary_mean(sweep.summary, 0.25, "subspace") /
                                summary_mean(sweep.summary, 0.25, "mimo-subspace") -
                            1.0;
    const double gain_big = summary_mean(sweep.summary, 0.5, "subspace") /
                                summary_mean(sweep.summary, 0.5, "mimo-subspace") -
                            1.0;

    res.seconds = seconds_since(t0);
    res.passed = monotone && gain_mid >= 0.50 && gain_big >= 0.50 &&
                 res.seconds < res.budget_seconds;
    std::ostringstream detail;
    detail << (monotone ? "means increase with aperture for every method"
                        : "monotonicity violated")
           << fmt("; gains over the discrete array: %.1f%% at 0.25, %.1f%% at 0.5",
                  100 * gain_mid, 100 * gain_big);
    res.detail = detail.str();
    return res;
}

CriterionResult criterion_pattern_symmetry(const std::filesystem::path& work_dir) {
    CriterionResult res{8, "mirrored receivers give mirrored patterns", false, "",
                        0.0, 10.0};
    const auto t0 = Clock::now();

    ScenarioConfig s = default_scenario();
    s.ir.position = Vec3(5.0, -5.0, 20.0);
    s.eve.position = Vec3(-5.0, 5.0, 20.0);
    const QuadratureRule rule = gauss_legendre_rule(s.quadrature_order);
    const CorrelationMatrix cor = scenario_correlation(s, rule);
    const SubspaceResult r = optimize_subspace(cor, s.ir.noise_power,
                                               s.eve.noise_power,
                                               s.power_budget_ma2);
    const int resolution = 41;
    const PatternGrids grids = export_pattern(r.weights, s, resolution);
    write_pattern_csv(grids, work_dir / "pattern_symmetry", "subspace");

    double scale = 0.0;
    for (double a : grids.amp_info) scale = std::max(scale, a);
    double worst = 0.0;
    for (int iy = 0; iy < resolution; ++iy)
        for (int ix = 0; ix < resolution; ++ix) {
            const std::size_t a = static_cast<std::size_t>(iy) * resolution + ix;
            const std::size_t b =
                static_cast<std::size_t>(resolution - 1 - iy) * resolution +
                (resolution - 1 - ix);
            worst = std::max(worst,
                             std::abs(grids.amp_info[a] - grids.amp_an[b]) / scale);
        }
    res.seconds = seconds_since(t0);
    res.passed = worst <= 1e-6 && res.seconds < res.budget_seconds;
    res.detail = fmt("max relative amplitude mismatch %.2e", worst);
    return res;
}

CriterionResult criterion_quadrature_stability(const std::filesystem::path&) {
    CriterionResult res{9, "correlation entries stable from order 20 to 40",
                        false, "", 0.0, 10.0};
    const auto t0 = Clock::now();
    const auto draws = sample_scenarios(100, 0xC009);
    const QuadratureRule rule20 = gauss_legendre_rule(20);
    const QuadratureRule rule40 = gauss_legendre_rule(40);

    double worst = 0.0;
    for (const auto& d : draws) {
        const auto& s = d.scenario;
        const CorrelationMatrix a =
            correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule20);
        const CorrelationMatrix b =
            correlation_matrix(s.ir, s.eve, s.aperture, s.consts, rule40);
        worst = std::max({worst, rel_diff(a.h_ii, b.h_ii), rel_diff(a.h_ee, b.h_ee),
                          std::abs(a.h_ie - b.h_ie) /
                              std::max(std::abs(b.h_ie), 1e-12)});
    }
    res.seconds = seconds_since(t0);
    res.passed = worst <= 1e-6 && res.seconds < res.budget_seconds;
    res.detail = fmt("max relative entry drift %.2e", worst);
    return res;
}

CriterionResult criterion_runtime_trend(const std::filesystem::path& work_dir) {
    CriterionResult res{10, "optimizer runtime flat across aperture/frequency",
                        false, "", 0.0, 600.0};
    const auto t0 = Clock::now();

    RuntimeConfig config;
    config.realizations = 40;
    config.warmup = 3;
    config.seed = 0xC00A;
    config.output_dir = work_dir / "runtime_trend";
    const RuntimeResult rt = measure_runtime(config);

    double sub_min = 1e300, sub_max = 0.0, sub_sum = 0.0, fourier_sum = 0.0;
    int sub_n = 0, fourier_n = 0;
    for (const RuntimeRow& row : rt.rows) {
        if (row.method == "subspace") {
            sub_min = std::min(sub_min, row.mean_ms);
            sub_max = std::max(sub_max, row.mean_ms);
            sub_sum += row.mean_ms;
            ++sub_n;
        } else if (row.method == "fourier-full") {
            fourier_sum += row.mean_ms;
            ++fourier_n;
        }
    }
    const double spread = sub_max / sub_min;
    const double slowdown =
        (fourier_sum / fourier_n) / (sub_sum / sub_n);

    res.seconds = seconds_since(t0);
    res.passed = spread < 2.0 && slowdown > 1.0 && res.seconds < res.budget_seconds;
    res.detail = fmt("subspace spread %.2fx across cells, full-lift slowdown %.2fx",
                     spread, slowdown);
    return res;
}

}  // namespace

std::vector<CriterionResult> run_verification(const std::vector<int>& ids,
                                              const std::filesystem::path& work_dir) {
    std::filesystem::create_directories(work_dir);
    using Body = CriterionResult (*)(const std::filesystem::path&);
    const std::map<int, Body> bodies = {
        {1, criterion_zf_null},
        {2, criterion_closed_vs_direct},
        {3, criterion_orthogonal_augmentation},
        {4, criterion_sca_mechanics},
        {5, criterion_oracle},
        {6, criterion_power_trend},
        {7, criterion_aperture_trend},
        {8, criterion_pattern_symmetry},
        {9, criterion_quadrature_stability},
        {10, criterion_runtime_trend},
    };

    std::vector<CriterionResult> results;
    for (const auto& [id, body] : bodies) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end())
            continue;
        try {
            results.push_back(body(work_dir));
        } catch (const std::exception& err) {
            CriterionResult failed;
            failed.id = id;
            failed.name = "criterion " + std::to_string(id);
            failed.passed = false;
            failed.detail = std::string("exception: ") + err.what();
            results.push_back(std::move(failed));
        }
    }
    return results;
}

int report_verification(const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::printf("[%s] criterion %2d: %s (%s) [%.1f s]\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::fflush(stdout);
    return failures;
}

}  // namespace capa
