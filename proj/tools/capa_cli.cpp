// SPDX-License-Identifier: Apache-2.0
//
// Experiment harness for the aperture secrecy optimizers: seeded parameter
// sweeps, current-pattern export, runtime comparisons and the built-in
// verification suite. All outputs are CSV.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "capa/experiment.hpp"
#include "capa/verification.hpp"
#include "capa/version.hpp"

namespace {

using capa::SweepAxis;

// Key=value config file; '#' starts a comment. CLI flags override file values.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> parse_strings(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int quadrature_order = 20;
    std::string methods;
    int realizations = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool seed_required) {
    cmd->add_option("--config", flags.config_path, "key=value config file");
    auto* seed = cmd->add_option("--seed", flags.seed, "master RNG seed");
    if (seed_required) seed->required();
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--quadrature-order", flags.quadrature_order,
                    "Gauss-Legendre points per axis");
    cmd->add_option("--methods", flags.methods, "comma-separated method list");
    cmd->add_option("--realizations", flags.realizations,
                    "channel realizations per sweep point");
}

capa::SweepConfig build_sweep_config(const CommonFlags& flags, SweepAxis axis,
                                     const std::string& values_flag) {
    const auto kv = load_config(flags.config_path);
    auto get = [&](const char* key, double fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : std::stod(it->second);
    };

    capa::SweepConfig config;
    config.axis = axis;
    config.seed = flags.seed;
    config.output_dir = flags.out_dir;
    config.quadrature_order = flags.quadrature_order;

    if (kv.count("axis_values")) config.axis_values = parse_doubles(kv.at("axis_values"));
    if (kv.count("methods")) config.methods = parse_strings(kv.at("methods"));
    if (kv.count("realizations")) config.realizations = std::stoi(kv.at("realizations"));
    config.aperture_area_m2 = get("aperture_area_m2", config.aperture_area_m2);
    config.frequency_hz = get("frequency_hz", config.frequency_hz);
    config.power_budget_ma2 = get("power_budget_ma2", config.power_budget_ma2);
    config.noise_ir = get("noise_ir", config.noise_ir);
    config.noise_eve = get("noise_eve", config.noise_eve);
    config.region.u_x = get("region_ux", config.region.u_x);
    config.region.u_y = get("region_uy", config.region.u_y);
    config.region.z_min = get("region_zmin", config.region.z_min);
    config.region.z_max = get("region_zmax", config.region.z_max);
    config.fourier.n_x = static_cast<int>(get("fourier_nx", config.fourier.n_x));
    config.fourier.n_y = static_cast<int>(get("fourier_ny", config.fourier.n_y));

    // Flags override the file.
    if (!values_flag.empty()) config.axis_values = parse_doubles(values_flag);
    if (!flags.methods.empty()) config.methods = parse_strings(flags.methods);
    if (flags.realizations > 0) config.realizations = flags.realizations;

    if (config.axis_values.empty()) {
        switch (axis) {
            case SweepAxis::Power: config.axis_values = {10, 100, 1000, 10000}; break;
            case SweepAxis::Aperture: config.axis_values = {0.1, 0.25, 0.5}; break;
            case SweepAxis::Frequency: config.axis_values = {2.4e9, 7.8e9, 15e9}; break;
        }
    }
    return config;
}

int run_sweep_command(const CommonFlags& flags, SweepAxis axis,
                      const std::string& values_flag) {
    const capa::SweepConfig config = build_sweep_config(flags, axis, values_flag);
    const capa::SweepResult result = capa::run_sweep(config);
    std::printf("wrote %zu rows to %s\n", result.rows.size(),
                result.rows_path.string().c_str());
    std::printf("summary in %s (%d degenerate redraws)\n",
                result.summary_path.string().c_str(), result.total_redraws);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aperture secrecy experiment harness"};
    app.set_version_flag("--version", capa::kCapaVersion);
    app.require_subcommand(1);

    CommonFlags flags;
    std::string values_flag;

    auto* sweep_power = app.add_subcommand("sweep-power",
                                           "secrecy rate versus power budget");
    auto* sweep_aperture =
        app.add_subcommand("sweep-aperture", "secrecy rate versus aperture area");
    auto* sweep_frequency =
        app.add_subcommand("sweep-frequency", "secrecy rate versus carrier frequency");
    for (CLI::App* cmd : {sweep_power, sweep_aperture, sweep_frequency}) {
        add_common(cmd, flags, /*seed_required=*/true);
        cmd->add_option("--values", values_flag, "comma-separated axis values");
    }

    auto* pattern = app.add_subcommand("pattern",
                                       "export current-pattern amplitude/phase grids");
    add_common(pattern, flags, /*seed_required=*/false);
    std::vector<double> ir_pos{5.0, -5.0, 20.0};
    std::vector<double> eve_pos{-5.0, 5.0, 20.0};
    std::string pattern_method = "subspace";
    int resolution = 41;
    double pattern_power = 100.0;
    double pattern_area = 0.25;
    double pattern_freq = 2.4e9;
    pattern->add_option("--ir", ir_pos, "IR position x,y,z")
        ->expected(3)
        ->delimiter(',');
    pattern->add_option("--eve", eve_pos, "eavesdropper position x,y,z")
        ->expected(3)
        ->delimiter(',');
    pattern->add_option("--method", pattern_method, "subspace | zf-mrt");
    pattern->add_option("--resolution", resolution, "grid points per axis");
    pattern->add_option("--power", pattern_power, "power budget, mA^2");
    pattern->add_option("--aperture-area", pattern_area, "aperture area, m^2");
    pattern->add_option("--frequency", pattern_freq, "carrier frequency, Hz");

    auto* runtime = app.add_subcommand("runtime",
                                       "compare optimizer wall-clock across setups");
    add_common(runtime, flags, /*seed_required=*/true);

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    std::vector<int> criterion_ids;
    std::string verify_out = "acceptance_out";
    verify->add_option("--criteria", criterion_ids, "criterion ids (default: all)");
    verify->add_option("--out", verify_out, "scratch output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_power->parsed())
            return run_sweep_command(flags, SweepAxis::Power, values_flag);
        if (sweep_aperture->parsed())
            return run_sweep_command(flags, SweepAxis::Aperture, values_flag);
        if (sweep_frequency->parsed())
            return run_sweep_command(flags, SweepAxis::Frequency, values_flag);

        if (pattern->parsed()) {
            capa::ScenarioConfig scenario = capa::default_scenario();
            scenario.aperture = capa::Aperture::square(pattern_area);
            scenario.consts = capa::EMConstants::from_frequency(pattern_freq);
            scenario.power_budget_ma2 = pattern_power;
            scenario.quadrature_order = flags.quadrature_order;
            scenario.ir.position = capa::Vec3(ir_pos[0], ir_pos[1], ir_pos[2]);
            scenario.eve.position = capa::Vec3(eve_pos[0], eve_pos[1], eve_pos[2]);

            const auto rule = capa::gauss_legendre_rule(scenario.quadrature_order);
            const auto cor = capa::scenario_correlation(scenario, rule);
            capa::WeightPair weights;
            if (pattern_method == "subspace") {
                weights = capa::optimize_subspace(cor, scenario.ir.noise_power,
                                                  scenario.eve.noise_power,
                                                  scenario.power_budget_ma2)
                              .weights;
            } else if (pattern_method == "zf-mrt") {
                weights = capa::allocate_power(cor, scenario.ir.noise_power,
                                               scenario.eve.noise_power,
                                               scenario.power_budget_ma2)
                              .weights;
            } else {
                std::fprintf(stderr, "unknown pattern method: %s\n",
                             pattern_method.c_str());
                return 1;
            }
            const auto grids = capa::export_pattern(weights, scenario, resolution);
            for (const auto& path :
                 capa::write_pattern_csv(grids, flags.out_dir, pattern_method))
                std::printf("wrote %s\n", path.string().c_str());
            return 0;
        }

        if (runtime->parsed()) {
            capa::RuntimeConfig config;
            config.seed = flags.seed;
            config.output_dir = flags.out_dir;
            config.quadrature_order = flags.quadrature_order;
            if (flags.realizations > 0) config.realizations = flags.realizations;
            if (!flags.methods.empty()) config.methods = parse_strings(flags.methods);
            const capa::RuntimeResult result = capa::measure_runtime(config);
            std::printf("wrote %s\n", result.path.string().c_str());
            for (const auto& row : result.rows)
                std::printf("%-14s A_T=%.2f f=%.2g GHz   %8.2f ms (+/- %.2f, n=%d)\n",
                            row.method.c_str(), row.aperture_area_m2,
                            row.frequency_hz / 1e9, row.mean_ms, row.std_ms,
                            row.count);
            return 0;
        }

        if (verify->parsed()) {
            const auto results = capa::run_verification(criterion_ids, verify_out);
            const int failures = capa::report_verification(results);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
