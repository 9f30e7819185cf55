// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the core operations: channel evaluation, quadrature,
// the secrecy-rate optimizers and the experiment harness.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "capa/experiment.hpp"
#include "capa/verification.hpp"
#include "capa/version.hpp"

namespace py = pybind11;
using namespace capa;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secrecy-rate optimization for continuous-aperture transmitters";
    m.attr("__version__") = kCapaVersion;
    m.attr("PRNG_NAME") = kPrngName;
    m.attr("CURRENT_UNIT_AMPS") = kCurrentUnitAmps;

    py::register_exception<DegenerateChannels>(m, "DegenerateChannelsError",
                                               PyExc_RuntimeError);

    py::class_<EMConstants>(m, "EMConstants")
        .def(py::init(&EMConstants::from_frequency), py::arg("frequency_hz"),
             py::arg("impedance_ohm") = 120.0 * M_PI)
        .def_readonly("frequency_hz", &EMConstants::frequency_hz)
        .def_readonly("wavelength_m", &EMConstants::wavelength_m)
        .def_readonly("impedance_ohm", &EMConstants::impedance_ohm)
        .def("wavenumber", &EMConstants::wavenumber);

    py::class_<Aperture>(m, "Aperture")
        .def(py::init([](double lx, double ly) {
                 Aperture a;
                 a.length_x = lx;
                 a.length_y = ly;
                 return a;
             }),
             py::arg("length_x"), py::arg("length_y"))
        .def_static("square", &Aperture::square, py::arg("area_m2"))
        .def_readwrite("length_x", &Aperture::length_x)
        .def_readwrite("length_y", &Aperture::length_y)
        .def("area", &Aperture::area)
        .def("contains", &Aperture::contains, py::arg("point"),
             py::arg("slack") = 1e-12);

    py::class_<UserSpec>(m, "UserSpec")
        .def(py::init([](const Vec3& position, const Vec3& polarization,
                         double noise_power) {
                 UserSpec u;
                 u.position = position;
                 u.polarization = polarization;
                 u.noise_power = noise_power;
                 return u;
             }),
             py::arg("position"), py::arg("polarization") = Vec3(0, 1, 0),
             py::arg("noise_power") = 5.6e-3)
        .def_readwrite("position", &UserSpec::position)
        .def_readwrite("polarization", &UserSpec::polarization)
        .def_readwrite("noise_power", &UserSpec::noise_power);

    py::class_<Region>(m, "Region")
        .def(py::init<>())
        .def_readwrite("u_x", &Region::u_x)
        .def_readwrite("u_y", &Region::u_y)
        .def_readwrite("z_min", &Region::z_min)
        .def_readwrite("z_max", &Region::z_max);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("aperture", &ScenarioConfig::aperture)
        .def_readwrite("consts", &ScenarioConfig::consts)
        .def_readwrite("ir", &ScenarioConfig::ir)
        .def_readwrite("eve", &ScenarioConfig::eve)
        .def_readwrite("power_budget_ma2", &ScenarioConfig::power_budget_ma2)
        .def_readwrite("quadrature_order", &ScenarioConfig::quadrature_order);
    m.def("default_scenario", &default_scenario);

    m.def("green_tensor", &green_tensor, py::arg("field_point"),
          py::arg("source"), py::arg("consts"));
    m.def("scalar_channel", &scalar_channel, py::arg("user"), py::arg("point"),
          py::arg("aperture"), py::arg("consts"));
    m.def("discrete_channel_vector", &discrete_channel_vector,
          py::arg("aperture"), py::arg("user"), py::arg("consts"));
    m.def("discrete_element_count", &discrete_element_count, py::arg("aperture"),
          py::arg("consts"));

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def_readonly("order", &QuadratureRule::order)
        .def_readonly("nodes", &QuadratureRule::nodes)
        .def_readonly("weights", &QuadratureRule::weights);
    m.def("gauss_legendre_rule", &gauss_legendre_rule, py::arg("order"));
    m.def("tensor_grid_points", &tensor_grid_points, py::arg("rule"),
          py::arg("aperture"));
    m.def("integrate_sampled", &integrate_sampled, py::arg("samples"),
          py::arg("rule"), py::arg("aperture"));

    py::class_<CorrelationMatrix>(m, "CorrelationMatrix")
        .def_readonly("h_ii", &CorrelationMatrix::h_ii)
        .def_readonly("h_ee", &CorrelationMatrix::h_ee)
        .def_readonly("h_ie", &CorrelationMatrix::h_ie)
        .def_readonly("quadrature_order", &CorrelationMatrix::quadrature_order)
        .def("h_ei", &CorrelationMatrix::h_ei)
        .def("determinant", &CorrelationMatrix::determinant)
        .def("matrix", &CorrelationMatrix::matrix)
        .def("inverse", &CorrelationMatrix::inverse);
    m.def("correlation_matrix", &correlation_matrix, py::arg("ir"),
          py::arg("eve"), py::arg("aperture"), py::arg("consts"), py::arg("rule"));
    m.def("gram_from_vectors", &gram_from_vectors, py::arg("vec_ir"),
          py::arg("vec_eve"));
    m.def("scenario_correlation", &scenario_correlation, py::arg("scenario"),
          py::arg("rule"));
    m.def("scenario_discrete_vector", &scenario_discrete_vector,
          py::arg("scenario"), py::arg("user"));

    py::class_<WeightPair>(m, "WeightPair")
        .def(py::init<>())
        .def_readwrite("info", &WeightPair::info)
        .def_readwrite("an", &WeightPair::an);

    py::class_<SolverDiagnostics>(m, "SolverDiagnostics")
        .def_readonly("outer_iterations", &SolverDiagnostics::outer_iterations)
        .def_readonly("inner_iterations_total",
                      &SolverDiagnostics::inner_iterations_total)
        .def_readonly("first_round_inner_iterations",
                      &SolverDiagnostics::first_round_inner_iterations)
        .def_readonly("rank_one_gap", &SolverDiagnostics::rank_one_gap)
        .def_readonly("rank_one_met", &SolverDiagnostics::rank_one_met)
        .def_readonly("lifted_rate_bits", &SolverDiagnostics::lifted_rate_bits)
        .def_readonly("wallclock_ms", &SolverDiagnostics::wallclock_ms)
        .def_readonly("note", &SolverDiagnostics::note)
        .def_readonly("objective_rounds", &SolverDiagnostics::objective_rounds);

    py::class_<SecrecyOutcome>(m, "SecrecyOutcome")
        .def_readonly("rate_ir_bits", &SecrecyOutcome::rate_ir_bits)
        .def_readonly("rate_eve_bits", &SecrecyOutcome::rate_eve_bits)
        .def_readonly("secrecy_bits", &SecrecyOutcome::secrecy_bits)
        .def_readonly("sinr_ir", &SecrecyOutcome::sinr_ir)
        .def_readonly("sinr_eve", &SecrecyOutcome::sinr_eve)
        .def_readonly("power_info", &SecrecyOutcome::power_info)
        .def_readonly("power_an", &SecrecyOutcome::power_an)
        .def_readonly("power_used", &SecrecyOutcome::power_used)
        .def_readonly("diagnostics", &SecrecyOutcome::diagnostics);

    m.def("effective_channels", [](const CorrelationMatrix& cor) {
        const EffectiveChannels ch = effective_channels(cor);
        return std::make_pair(ch.to_ir, ch.to_eve);
    });
    m.def("weights_power", &weights_power, py::arg("weights"), py::arg("cor"));
    m.def("secrecy_rate_closed", &secrecy_rate_closed, py::arg("weights"),
          py::arg("cor"), py::arg("noise_ir"), py::arg("noise_eve"));
    m.def("reconstruct_current", &reconstruct_current, py::arg("weights"),
          py::arg("ir"), py::arg("eve"), py::arg("aperture"), py::arg("consts"),
          py::arg("grid"));
    m.def("secrecy_rate_direct", &secrecy_rate_direct, py::arg("j_info"),
          py::arg("j_an"), py::arg("ir"), py::arg("eve"), py::arg("rule"),
          py::arg("aperture"), py::arg("consts"));

    py::class_<ScaOptions>(m, "ScaOptions")
        .def(py::init<>())
        .def_readwrite("rank_one_tol", &ScaOptions::rank_one_tol)
        .def_readwrite("objective_tol", &ScaOptions::objective_tol)
        .def_readwrite("max_inner_iterations", &ScaOptions::max_inner_iterations)
        .def_readwrite("max_outer_iterations", &ScaOptions::max_outer_iterations)
        .def_readwrite("initial_penalty_scale", &ScaOptions::initial_penalty_scale)
        .def_readwrite("penalty_growth", &ScaOptions::penalty_growth);

    py::class_<SubspaceResult>(m, "SubspaceResult")
        .def_readonly("weights", &SubspaceResult::weights)
        .def_readonly("outcome", &SubspaceResult::outcome);
    m.def("optimize_subspace", &optimize_subspace, py::arg("cor"),
          py::arg("noise_ir"), py::arg("noise_eve"), py::arg("budget"),
          py::arg("options") = ScaOptions{});

    py::class_<ZfMrtSolution>(m, "ZfMrtSolution")
        .def_readonly("weights", &ZfMrtSolution::weights)
        .def_readonly("power_info", &ZfMrtSolution::power_info)
        .def_readonly("power_an", &ZfMrtSolution::power_an)
        .def_readonly("q", &ZfMrtSolution::q)
        .def_readonly("t", &ZfMrtSolution::t)
        .def_readonly("c", &ZfMrtSolution::c)
        .def_readonly("outcome", &ZfMrtSolution::outcome);
    m.def("zf_weights", &zf_weights, py::arg("cor"));
    m.def("reduced_rate", &reduced_rate, py::arg("power_info"), py::arg("budget"),
          py::arg("q"), py::arg("t"), py::arg("c"));
    m.def("allocate_power", &allocate_power, py::arg("cor"), py::arg("noise_ir"),
          py::arg("noise_eve"), py::arg("budget"), py::arg("tol") = 0.0);

    m.def("mrt_mrt_baseline", &mrt_mrt_baseline, py::arg("cor"),
          py::arg("noise_ir"), py::arg("noise_eve"), py::arg("budget"));

    py::enum_<SubspaceMethod>(m, "SubspaceMethod")
        .value("PENALTY_SCA", SubspaceMethod::PenaltySca)
        .value("ZF_MRT", SubspaceMethod::ZfMrt);
    m.def("mimo_secrecy", &mimo_secrecy, py::arg("scenario"), py::arg("method"),
          py::arg("options") = ScaOptions{});

    py::class_<FourierTruncation>(m, "FourierTruncation")
        .def(py::init([](int nx, int ny, int nz) {
                 return FourierTruncation{nx, ny, nz};
             }),
             py::arg("n_x"), py::arg("n_y"), py::arg("n_z") = 0)
        .def_readwrite("n_x", &FourierTruncation::n_x)
        .def_readwrite("n_y", &FourierTruncation::n_y)
        .def_readwrite("n_z", &FourierTruncation::n_z)
        .def("count", &FourierTruncation::count);
    py::class_<FourierChannel>(m, "FourierChannel")
        .def_readwrite("truncation", &FourierChannel::truncation)
        .def_readwrite("coeff_ir", &FourierChannel::coeff_ir)
        .def_readwrite("coeff_eve", &FourierChannel::coeff_eve);
    m.def("fourier_basis",
          [](int nx, int ny, int nz, const Vec3& s, const Aperture& ap) {
              return fourier_basis({nx, ny, nz}, s, ap);
          },
          py::arg("n_x"), py::arg("n_y"), py::arg("n_z"), py::arg("point"),
          py::arg("aperture"));
    m.def("fourier_channel", &fourier_channel, py::arg("ir"), py::arg("eve"),
          py::arg("truncation"), py::arg("aperture"), py::arg("consts"),
          py::arg("rule"));
    py::class_<FourierOptions>(m, "FourierOptions")
        .def(py::init<>())
        .def_readwrite("sca", &FourierOptions::sca)
        .def_readwrite("full_lift_limit", &FourierOptions::full_lift_limit)
        .def_readwrite("force_full_lift", &FourierOptions::force_full_lift);
    m.def("fourier_optimize", &fourier_optimize, py::arg("channel"),
          py::arg("noise_ir"), py::arg("noise_eve"), py::arg("budget"),
          py::arg("options") = FourierOptions{});

    py::class_<OracleOptions>(m, "OracleOptions")
        .def(py::init<>())
        .def_readwrite("starts", &OracleOptions::starts)
        .def_readwrite("max_iterations", &OracleOptions::max_iterations)
        .def_readwrite("simplex_tol", &OracleOptions::simplex_tol)
        .def_readwrite("seed", &OracleOptions::seed)
        .def_readwrite("include_warm_starts", &OracleOptions::include_warm_starts);
    m.def("oracle_search", &oracle_search, py::arg("cor"), py::arg("noise_ir"),
          py::arg("noise_eve"), py::arg("budget"),
          py::arg("options") = OracleOptions{});

    m.def("sample_users",
          [](const Region& region, const Aperture& aperture,
             const EMConstants& consts, const QuadratureRule& rule,
             double noise_ir, double noise_eve, std::uint64_t seed) {
              std::mt19937_64 rng(seed);
              const SampledUsers users = sample_users(region, aperture, consts,
                                                      rule, noise_ir, noise_eve,
                                                      rng);
              return std::make_tuple(users.ir, users.eve, users.redraws);
          },
          py::arg("region"), py::arg("aperture"), py::arg("consts"),
          py::arg("rule"), py::arg("noise_ir"), py::arg("noise_eve"),
          py::arg("seed"));

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("POWER", SweepAxis::Power)
        .value("APERTURE", SweepAxis::Aperture)
        .value("FREQUENCY", SweepAxis::Frequency);
    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("axis", &SweepConfig::axis)
        .def_readwrite("axis_values", &SweepConfig::axis_values)
        .def_readwrite("realizations", &SweepConfig::realizations)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("methods", &SweepConfig::methods)
        .def_readwrite("quadrature_order", &SweepConfig::quadrature_order)
        .def_readwrite("output_dir", &SweepConfig::output_dir)
        .def_readwrite("aperture_area_m2", &SweepConfig::aperture_area_m2)
        .def_readwrite("frequency_hz", &SweepConfig::frequency_hz)
        .def_readwrite("power_budget_ma2", &SweepConfig::power_budget_ma2)
        .def_readwrite("noise_ir", &SweepConfig::noise_ir)
        .def_readwrite("noise_eve", &SweepConfig::noise_eve)
        .def_readwrite("region", &SweepConfig::region)
        .def_readwrite("fourier", &SweepConfig::fourier);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("axis", &SweepRow::axis)
        .def_readonly("axis_value", &SweepRow::axis_value)
        .def_readonly("realization", &SweepRow::realization)
        .def_readonly("seed", &SweepRow::seed)
        .def_readonly("method", &SweepRow::method)
        .def_readonly("secrecy_bits", &SweepRow::secrecy_bits)
        .def_readonly("rate_ir_bits", &SweepRow::rate_ir_bits)
        .def_readonly("rate_eve_bits", &SweepRow::rate_eve_bits)
        .def_readonly("power_info_ma2", &SweepRow::power_info_ma2)
        .def_readonly("power_an_ma2", &SweepRow::power_an_ma2)
        .def_readonly("iterations", &SweepRow::iterations)
        .def_readonly("rank1_gap", &SweepRow::rank1_gap)
        .def_readonly("wallclock_ms", &SweepRow::wallclock_ms)
        .def_readonly("status", &SweepRow::status);
    py::class_<SweepSummaryRow>(m, "SweepSummaryRow")
        .def_readonly("axis", &SweepSummaryRow::axis)
        .def_readonly("axis_value", &SweepSummaryRow::axis_value)
        .def_readonly("method", &SweepSummaryRow::method)
        .def_readonly("count", &SweepSummaryRow::count)
        .def_readonly("mean_secrecy_bits", &SweepSummaryRow::mean_secrecy_bits)
        .def_readonly("mean_rate_ir_bits", &SweepSummaryRow::mean_rate_ir_bits)
        .def_readonly("mean_rate_eve_bits", &SweepSummaryRow::mean_rate_eve_bits)
        .def_readonly("mean_wallclock_ms", &SweepSummaryRow::mean_wallclock_ms);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("summary", &SweepResult::summary)
        .def_readonly("rows_path", &SweepResult::rows_path)
        .def_readonly("summary_path", &SweepResult::summary_path)
        .def_readonly("total_redraws", &SweepResult::total_redraws);
    m.def("run_sweep", &run_sweep, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<PatternGrids>(m, "PatternGrids")
        .def_readonly("xs", &PatternGrids::xs)
        .def_readonly("ys", &PatternGrids::ys)
        .def_readonly("amp_info", &PatternGrids::amp_info)
        .def_readonly("phase_info", &PatternGrids::phase_info)
        .def_readonly("amp_an", &PatternGrids::amp_an)
        .def_readonly("phase_an", &PatternGrids::phase_an);
    m.def("export_pattern", &export_pattern, py::arg("weights"),
          py::arg("scenario"), py::arg("resolution"));
    m.def("write_pattern_csv", &write_pattern_csv, py::arg("grids"),
          py::arg("output_dir"), py::arg("prefix"));

    py::class_<CriterionResult>(m, "CriterionResult")
        .def_readonly("id", &CriterionResult::id)
        .def_readonly("name", &CriterionResult::name)
        .def_readonly("passed", &CriterionResult::passed)
        .def_readonly("detail", &CriterionResult::detail)
        .def_readonly("seconds", &CriterionResult::seconds);
    m.def("run_verification", &run_verification,
          py::arg("ids") = std::vector<int>{},
          py::arg("work_dir") = std::filesystem::path("acceptance_out"),
          py::call_guard<py::gil_scoped_release>());
}
