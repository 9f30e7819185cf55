// SPDX-License-Identifier: Apache-2.0
#include "capa/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "capa/version.hpp"

namespace capa {

namespace {

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(now() - t0).count();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
    return splitmix64(splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) +
                      index);
}

double uniform_double(std::mt19937_64& rng, double lo, double hi) {
    const double unit = (rng() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
}

SampledUsers sample_users(const Region& region, const Aperture& aperture,
                          const EMConstants& consts, const QuadratureRule& rule,
                          double noise_ir, double noise_eve, std::mt19937_64& rng) {
    if (region.z_min <= 0.0 || region.z_max < region.z_min)
        throw std::invalid_argument("region must sit in front of the aperture");

    SampledUsers users;
    for (int attempt = 0; attempt <= 100; ++attempt) {
        auto draw = [&]() {
            UserSpec u;
            u.position = Vec3(uniform_double(rng, -region.u_x, region.u_x),
                              uniform_double(rng, -region.u_y, region.u_y),
                              uniform_double(rng, region.z_min, region.z_max));
            u.polarization = Vec3(0.0, 1.0, 0.0);
            return u;
        };
        users.ir = draw();
        users.eve = draw();
        users.ir.noise_power = noise_ir;
        users.eve.noise_power = noise_eve;
        try {
            correlation_matrix(users.ir, users.eve, aperture, consts, rule);
            return users;
        } catch (const DegenerateChannels&) {
            ++users.redraws;
        }
    }
    throw std::runtime_error("sample_users: 100 consecutive degenerate draws");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Power: return "power";
        case SweepAxis::Aperture: return "aperture";
        case SweepAxis::Frequency: return "frequency";
    }
    return "unknown";
}

namespace {

ScenarioConfig scenario_for(const SweepConfig& config, SweepAxis axis, double value) {
    ScenarioConfig s;
    s.aperture = Aperture::square(axis == SweepAxis::Aperture
                                      ? value
                                      : config.aperture_area_m2);
    s.consts = EMConstants::from_frequency(
        axis == SweepAxis::Frequency ? value : config.frequency_hz);
    s.power_budget_ma2 =
        axis == SweepAxis::Power ? value : config.power_budget_ma2;
    s.quadrature_order = config.quadrature_order;
    s.ir.noise_power = config.noise_ir;
    s.eve.noise_power = config.noise_eve;
    return s;
}

SecrecyOutcome evaluate_method(const std::string& method,
                               const ScenarioConfig& scenario,
                               const CorrelationMatrix& cor,
                               const SweepConfig& config) {
    const double budget = scenario.power_budget_ma2;
    if (method == "subspace")
        return optimize_subspace(cor, scenario.ir.noise_power,
                                 scenario.eve.noise_power, budget, config.sca)
            .outcome;
    if (method == "zf-mrt")
        return allocate_power(cor, scenario.ir.noise_power,
                              scenario.eve.noise_power, budget)
            .outcome;
    if (method == "mrt")
        return mrt_mrt_baseline(cor, scenario.ir.noise_power,
                                scenario.eve.noise_power, budget);
    if (method == "mimo-subspace")
        return mimo_secrecy(scenario, SubspaceMethod::PenaltySca, config.sca);
    if (method == "mimo-zf-mrt")
        return mimo_secrecy(scenario, SubspaceMethod::ZfMrt, config.sca);
    if (method == "fourier" || method == "fourier-full") {
        const bool full_lift = method == "fourier-full";
        const QuadratureRule rule = gauss_legendre_rule(scenario.quadrature_order);
        FourierChannel channel = fourier_channel(
            scenario.ir, scenario.eve,
            full_lift ? config.fourier_full : config.fourier, scenario.aperture,
            scenario.consts, rule);
        channel.coeff_ir *= kCurrentUnitAmps;
        channel.coeff_eve *= kCurrentUnitAmps;
        FourierOptions fopts;
        fopts.sca = config.sca;
        fopts.force_full_lift = full_lift;
        return fourier_optimize(channel, scenario.ir.noise_power,
                                scenario.eve.noise_power, budget, fopts);
    }
    throw std::invalid_argument("unknown method: " + method);
}

void write_config_echo(std::ofstream& out, const SweepConfig& config) {
    out << "# capa-secrecy " << kCapaVersion << "\n";
    out << "# prng=" << kPrngName << " seed=" << config.seed << "\n";
    out << "# axis=" << axis_name(config.axis) << " values=";
    for (std::size_t i = 0; i < config.axis_values.size(); ++i)
        out << (i ? "," : "") << fmt(config.axis_values[i]);
    out << " realizations=" << config.realizations
        << " quadrature_order=" << config.quadrature_order << "\n";
    out << "# methods=";
    for (std::size_t i = 0; i < config.methods.size(); ++i)
        out << (i ? "," : "") << config.methods[i];
    out << "\n";
    out << "# aperture_area_m2=" << fmt(config.aperture_area_m2)
        << " frequency_hz=" << fmt(config.frequency_hz)
        << " power_budget_ma2=" << fmt(config.power_budget_ma2)
        << " noise_ir=" << fmt(config.noise_ir)
        << " noise_eve=" << fmt(config.noise_eve) << "\n";
    out << "# region=" << fmt(config.region.u_x) << "," << fmt(config.region.u_y)
        << "," << fmt(config.region.z_min) << "," << fmt(config.region.z_max)
        << "\n";
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    if (config.realizations < 1)
        throw std::invalid_argument("realization count must be >= 1");
    if (config.axis_values.empty())
        throw std::invalid_argument("sweep needs at least one axis value");
    for (double v : config.axis_values)
        if (!(v > 0.0)) throw std::invalid_argument("axis values must be positive");

    SweepResult result;
    const std::string axis = axis_name(config.axis);

    for (std::size_t ai = 0; ai < config.axis_values.size(); ++ai) {
        const double value = config.axis_values[ai];
        const ScenarioConfig base = scenario_for(config, config.axis, value);
        const QuadratureRule rule = gauss_legendre_rule(base.quadrature_order);

        for (int r = 0; r < config.realizations; ++r) {
            // Per-realization seed shared across axis values: sweeps compare
            // methods on paired receiver draws.
            const std::uint64_t seed = derive_seed(config.seed, 0, r);
            std::mt19937_64 rng(seed);
            ScenarioConfig scenario = base;
            const SampledUsers users = sample_users(
                config.region, scenario.aperture, scenario.consts, rule,
                config.noise_ir, config.noise_eve, rng);
            scenario.ir = users.ir;
            scenario.eve = users.eve;
            result.total_redraws += users.redraws;

            const CorrelationMatrix cor = scenario_correlation(scenario, rule);

            for (const std::string& method : config.methods) {
                SweepRow row;
                row.axis = axis;
                row.axis_value = value;
                row.realization = r;
                row.seed = seed;
                row.method = method;
                const auto t0 = now();
                try {
                    const SecrecyOutcome out =
                        evaluate_method(method, scenario, cor, config);
                    row.secrecy_bits = out.secrecy_bits;
                    row.rate_ir_bits = out.rate_ir_bits;
                    row.rate_eve_bits = out.rate_eve_bits;
                    row.power_info_ma2 = out.power_info;
                    row.power_an_ma2 = out.power_an;
                    row.iterations = out.diagnostics.inner_iterations_total;
                    row.rank1_gap = out.diagnostics.rank_one_gap;
                } catch (const std::exception& err) {
                    row.status = std::string("error: ") + err.what();
                }
                row.wallclock_ms = ms_since(t0);
                result.rows.push_back(std::move(row));
            }
        }
    }

    // Per-(axis value, method) means over the "ok" rows.
    for (double value : config.axis_values) {
        for (const std::string& method : config.methods) {
            SweepSummaryRow s;
            s.axis = axis;
            s.axis_value = value;
            s.method = method;
            for (const SweepRow& row : result.rows) {
                if (row.axis_value != value || row.method != method ||
                    row.status != "ok")
                    continue;
                ++s.count;
                s.mean_secrecy_bits += row.secrecy_bits;
                s.mean_rate_ir_bits += row.rate_ir_bits;
                s.mean_rate_eve_bits += row.rate_eve_bits;
                s.mean_wallclock_ms += row.wallclock_ms;
            }
            if (s.count > 0) {
                s.mean_secrecy_bits /= s.count;
                s.mean_rate_ir_bits /= s.count;
                s.mean_rate_eve_bits /= s.count;
                s.mean_wallclock_ms /= s.count;
            }
            result.summary.push_back(std::move(s));
        }
    }

    write_sweep_csv(config, result);
    return result;
}

void write_sweep_csv(const SweepConfig& config, SweepResult& result) {
    std::filesystem::create_directories(config.output_dir);
    const std::string axis = axis_name(config.axis);
    result.rows_path = config.output_dir / ("sweep_" + axis + ".csv");
    result.summary_path = config.output_dir / ("sweep_" + axis + "_summary.csv");

    std::ofstream rows(result.rows_path);
    if (!rows) throw std::runtime_error("cannot write " + result.rows_path.string());
    write_config_echo(rows, config);
    rows << "axis_name,axis_value,realization,seed,method,R_S_bits,R_I_bits,"
            "R_E_bits,P_I,P_A,iterations,rank1_gap,wallclock_ms,status\n";
    for (const SweepRow& r : result.rows) {
        rows << r.axis << ',' << fmt(r.axis_value) << ',' << r.realization << ','
             << r.seed << ',' << r.method << ',' << fmt(r.secrecy_bits) << ','
             << fmt(r.rate_ir_bits) << ',' << fmt(r.rate_eve_bits) << ','
             << fmt(r.power_info_ma2) << ',' << fmt(r.power_an_ma2) << ','
             << r.iterations << ',' << fmt(r.rank1_gap) << ','
             << fmt(r.wallclock_ms) << ',' << r.status << '\n';
    }

    std::ofstream summary(result.summary_path);
    if (!summary)
        throw std::runtime_error("cannot write " + result.summary_path.string());
    write_config_echo(summary, config);
    summary << "axis_name,axis_value,method,n,mean_R_S_bits,mean_R_I_bits,"
               "mean_R_E_bits,mean_wallclock_ms\n";
    for (const SweepSummaryRow& s : result.summary) {
        summary << s.axis << ',' << fmt(s.axis_value) << ',' << s.method << ','
                << s.count << ',' << fmt(s.mean_secrecy_bits) << ','
                << fmt(s.mean_rate_ir_bits) << ',' << fmt(s.mean_rate_eve_bits)
                << ',' << fmt(s.mean_wallclock_ms) << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() < 14) throw std::runtime_error("malformed sweep row: " + line);
        SweepRow r;
        r.axis = f[0];
        r.axis_value = std::stod(f[1]);
        r.realization = std::stoi(f[2]);
        r.seed = std::stoull(f[3]);
        r.method = f[4];
        r.secrecy_bits = std::stod(f[5]);
        r.rate_ir_bits = std::stod(f[6]);
        r.rate_eve_bits = std::stod(f[7]);
        r.power_info_ma2 = std::stod(f[8]);
        r.power_an_ma2 = std::stod(f[9]);
        r.iterations = std::stoi(f[10]);
        r.rank1_gap = std::stod(f[11]);
        r.wallclock_ms = std::stod(f[12]);
        r.status = f[13];
        // Error messages may themselves contain commas.
        for (std::size_t i = 14; i < f.size(); ++i) r.status += "," + f[i];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<SweepSummaryRow> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<SweepSummaryRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 8) throw std::runtime_error("malformed summary row: " + line);
        SweepSummaryRow s;
        s.axis = f[0];
        s.axis_value = std::stod(f[1]);
        s.method = f[2];
        s.count = std::stoi(f[3]);
        s.mean_secrecy_bits = std::stod(f[4]);
        s.mean_rate_ir_bits = std::stod(f[5]);
        s.mean_rate_eve_bits = std::stod(f[6]);
        s.mean_wallclock_ms = std::stod(f[7]);
        rows.push_back(std::move(s));
    }
    return rows;
}

PatternGrids export_pattern(const WeightPair& weights, const ScenarioConfig& scenario,
                            int resolution) {
    if (resolution < 2)
        throw std::invalid_argument("pattern grid needs at least 2 points per axis");

    PatternGrids grids;
    grids.xs.resize(resolution);
    grids.ys.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        grids.xs[i] = -0.5 * scenario.aperture.length_x +
                      i * scenario.aperture.length_x / (resolution - 1);
        grids.ys[i] = -0.5 * scenario.aperture.length_y +
                      i * scenario.aperture.length_y / (resolution - 1);
    }

    const std::size_t total = static_cast<std::size_t>(resolution) * resolution;
    grids.amp_info.resize(total);
    grids.phase_info.resize(total);
    grids.amp_an.resize(total);
    grids.phase_an.resize(total);

    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            const Vec3 s(grids.xs[ix], grids.ys[iy], 0.0);
            // Per-milliampere channel samples, matching the scenario-level
            // weighting convention; amplitudes come out in mA/m.
            const cdouble h_ir =
                kCurrentUnitAmps *
                scalar_channel(scenario.ir, s, scenario.aperture, scenario.consts);
            const cdouble h_eve =
                kCurrentUnitAmps *
                scalar_channel(scenario.eve, s, scenario.aperture, scenario.consts);
            const cdouble j_info = weights.info[0] * h_ir + weights.info[1] * h_eve;
            const cdouble j_an = weights.an[0] * h_ir + weights.an[1] * h_eve;
            const std::size_t idx = static_cast<std::size_t>(iy) * resolution + ix;
            grids.amp_info[idx] = std::abs(j_info);
            grids.phase_info[idx] = std::abs(j_info) > 0.0 ? std::arg(j_info) : 0.0;
            grids.amp_an[idx] = std::abs(j_an);
            grids.phase_an[idx] = std::abs(j_an) > 0.0 ? std::arg(j_an) : 0.0;
        }
    }
    return grids;
}

std::vector<std::filesystem::path> write_pattern_csv(
    const PatternGrids& grids, const std::filesystem::path& output_dir,
    const std::string& prefix) {
    std::filesystem::create_directories(output_dir);
    std::vector<std::filesystem::path> paths;
    const std::vector<std::pair<std::string, const std::vector<double>*>> files = {
        {"info_amplitude", &grids.amp_info},
        {"info_phase", &grids.phase_info},
        {"an_amplitude", &grids.amp_an},
        {"an_phase", &grids.phase_an},
    };
    for (const auto& [name, values] : files) {
        const auto path = output_dir / (prefix + "_" + name + ".csv");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << "# capa-secrecy " << kCapaVersion << " pattern grid\n";
        out << "s_x,s_y,value\n";
        for (std::size_t iy = 0; iy < grids.ys.size(); ++iy)
            for (std::size_t ix = 0; ix < grids.xs.size(); ++ix)
                out << fmt(grids.xs[ix]) << ',' << fmt(grids.ys[iy]) << ','
                    << fmt((*values)[iy * grids.xs.size() + ix]) << '\n';
        paths.push_back(path);
    }
    return paths;
}

RuntimeResult measure_runtime(const RuntimeConfig& config) {
    RuntimeResult result;
    for (const RuntimeCell& cell : config.cells) {
        ScenarioConfig scenario;
        scenario.aperture = Aperture::square(cell.aperture_area_m2);
        scenario.consts = EMConstants::from_frequency(cell.frequency_hz);
        scenario.power_budget_ma2 = config.power_budget_ma2;
        scenario.quadrature_order = config.quadrature_order;
        const QuadratureRule rule = gauss_legendre_rule(config.quadrature_order);

        std::map<std::string, std::vector<double>> timings;
        for (int r = -config.warmup; r < config.realizations; ++r) {
            std::mt19937_64 rng(derive_seed(config.seed, 0, std::max(r, 0)));
            const SampledUsers users =
                sample_users(config.region, scenario.aperture, scenario.consts,
                             rule, config.noise_ir, config.noise_eve, rng);
            scenario.ir = users.ir;
            scenario.eve = users.eve;
            const double budget = scenario.power_budget_ma2;

            for (const std::string& method : config.methods) {
                const auto t0 = now();
                if (method == "subspace") {
                    const CorrelationMatrix cor = scenario_correlation(scenario, rule);
                    optimize_subspace(cor, config.noise_ir, config.noise_eve,
                                      budget, config.sca);
                } else if (method == "zf-mrt") {
                    const CorrelationMatrix cor = scenario_correlation(scenario, rule);
                    allocate_power(cor, config.noise_ir, config.noise_eve, budget);
                } else if (method == "fourier-full") {
                    FourierChannel channel = fourier_channel(
                        scenario.ir, scenario.eve, config.full_lift_truncation,
                        scenario.aperture, scenario.consts, rule);
                    channel.coeff_ir *= kCurrentUnitAmps;
                    channel.coeff_eve *= kCurrentUnitAmps;
                    FourierOptions fopts;
                    fopts.sca = config.sca;
                    fopts.force_full_lift = true;
                    fourier_optimize(channel, config.noise_ir, config.noise_eve,
                                     budget, fopts);
                } else if (method == "mimo-subspace") {
                    mimo_secrecy(scenario, SubspaceMethod::PenaltySca, config.sca);
                } else {
                    throw std::invalid_argument("unknown runtime method: " + method);
                }
                if (r >= 0) timings[method].push_back(ms_since(t0));
            }
        }

        for (const std::string& method : config.methods) {
            const auto& t = timings[method];
            RuntimeRow row;
            row.method = method;
            row.aperture_area_m2 = cell.aperture_area_m2;
            row.frequency_hz = cell.frequency_hz;
            row.count = static_cast<int>(t.size());
            for (double x : t) row.mean_ms += x;
            row.mean_ms /= std::max<std::size_t>(t.size(), 1);
            for (double x : t) row.std_ms += (x - row.mean_ms) * (x - row.mean_ms);
            row.std_ms = t.size() > 1 ? std::sqrt(row.std_ms / (t.size() - 1)) : 0.0;
            result.rows.push_back(std::move(row));
        }
    }

    std::filesystem::create_directories(config.output_dir);
    result.path = config.output_dir / "runtime.csv";
    std::ofstream out(result.path);
    if (!out) throw std::runtime_error("cannot write " + result.path.string());
    out << "# capa-secrecy " << kCapaVersion << " runtime\n";
    out << "# prng=" << kPrngName << " seed=" << config.seed
        << " realizations=" << config.realizations << "\n";
    out << "method,A_T,f,mean_ms,std_ms,n\n";
    for (const RuntimeRow& r : result.rows)
        out << r.method << ',' << fmt(r.aperture_area_m2) << ','
            << fmt(r.frequency_hz) << ',' << fmt(r.mean_ms) << ','
            << fmt(r.std_ms) << ',' << r.count << '\n';
    return result;
}

}  // namespace capa
