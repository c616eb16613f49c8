#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>
#include <variant>
#include <vector>

#include "dqm/analytics.hpp"
#include "dqm/chaos.hpp"
#include "dqm/fock_oracle.hpp"
#include "dqm/mode_space.hpp"
#include "dqm/oscillator.hpp"

namespace py = pybind11;
using namespace dqm;

namespace {

using SpecTuple = std::variant<std::tuple<double, double>, std::tuple<double, double, double>>;

// pybind11 holders must be non-const; the grid is immutable, so casting the
// constness away at the boundary is safe.
using PyGridPtr = std::shared_ptr<ModeGrid>;

PyGridPtr to_py(GridPtr grid) { return std::const_pointer_cast<ModeGrid>(std::move(grid)); }

PyGridPtr grid_from_tuples(const std::vector<SpecTuple>& specs) {
    std::vector<ModeSpec> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        if (std::holds_alternative<std::tuple<double, double>>(spec)) {
            const auto& [omega, gamma] = std::get<std::tuple<double, double>>(spec);
            out.push_back(ModeSpec{omega, gamma, std::nullopt});
        } else {
            const auto& [omega, gamma, energy] =
                std::get<std::tuple<double, double, double>>(spec);
            out.push_back(ModeSpec{omega, gamma, energy});
        }
    }
    return to_py(build_grid(out));
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

PYBIND11_MODULE(_dqm, m) {
    m.doc() = "memory states as damped two-mode squeezed vacua: closed forms, "
              "Fock-space oracle, chaos diagnostics, doubled oscillator";

    py::register_exception<Error>(m, "Error");

    py::class_<Mode>(m, "Mode")
        .def_readonly("index", &Mode::index)
        .def_readonly("omega", &Mode::omega)
        .def_readonly("gamma", &Mode::gamma)
        .def_readonly("energy", &Mode::energy)
        .def("__repr__", [](const Mode& mode) {
            return "Mode(index=" + std::to_string(mode.index) +
                   ", omega=" + std::to_string(mode.omega) +
                   ", gamma=" + std::to_string(mode.gamma) + ")";
        });

    py::class_<ModeGrid, PyGridPtr>(m, "ModeGrid")
        .def_property_readonly("modes", &ModeGrid::modes)
        .def("mode", &ModeGrid::mode, py::arg("k"))
        .def("__len__", &ModeGrid::size)
        .def_property_readonly("gamma_sum", &ModeGrid::gamma_sum);

    m.def("build_grid", &grid_from_tuples, py::arg("specs"),
          "Build a validated mode grid from (omega, gamma[, energy]) tuples.");

    py::class_<MemoryCode>(m, "MemoryCode")
        .def(py::init([](PyGridPtr grid, std::vector<double> thetas) {
                 return MemoryCode(std::move(grid), std::move(thetas));
             }),
             py::arg("grid"), py::arg("thetas"))
        .def_property_readonly("grid",
                               [](const MemoryCode& c) { return to_py(c.grid_ptr()); })
        .def_property_readonly("thetas",
                               [](const MemoryCode& c) { return to_vector(c.thetas()); })
        .def("occupations", &MemoryCode::occupations)
        .def("__len__", &MemoryCode::size);

    m.def(
        "code_from_occupations",
        [](PyGridPtr grid, const std::vector<double>& ns) {
            return code_from_occupations(std::move(grid), ns);
        },
        py::arg("grid"), py::arg("occupations"));

    py::class_<CodeDistance>(m, "CodeDistance")
        .def_readonly("delta_n", &CodeDistance::delta_n)
        .def_readonly("max_abs", &CodeDistance::max_abs);
    m.def("code_distance_at_zero", &code_distance_at_zero, py::arg("a"), py::arg("b"));

    py::class_<EvolvedState>(m, "EvolvedState")
        .def(py::init<MemoryCode, double>(), py::arg("code"), py::arg("time"))
        .def_property_readonly("code", &EvolvedState::code)
        .def_property_readonly("time", &EvolvedState::time);

    m.def("squeeze_parameter", &squeeze_parameter, py::arg("state"), py::arg("k"));
    m.def("occupation", &occupation, py::arg("state"), py::arg("k"));
    m.def("occupations", &occupations, py::arg("state"));
    m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
    m.def("log_abs_overlap", &log_abs_overlap, py::arg("a"), py::arg("b"));
    m.def("decay_envelope", &decay_envelope, py::arg("code"), py::arg("t"));
    m.def("mode_entropy", &mode_entropy, py::arg("r"));
    m.def("entanglement_entropy", &entanglement_entropy, py::arg("state"));

    py::class_<SchmidtWeights>(m, "SchmidtWeights")
        .def_readonly("mode", &SchmidtWeights::mode)
        .def_readonly("n_max", &SchmidtWeights::n_max)
        .def_readonly("weights", &SchmidtWeights::weights)
        .def_readonly("tail", &SchmidtWeights::tail);
    m.def("schmidt_weights", &schmidt_weights, py::arg("state"), py::arg("k"),
          py::arg("n_max"));

    py::class_<ThermalDiagnostics>(m, "ThermalDiagnostics")
        .def_readonly("mode", &ThermalDiagnostics::mode)
        .def_readonly("r", &ThermalDiagnostics::r)
        .def_readonly("beta", &ThermalDiagnostics::beta)
        .def_readonly("bose_occupation", &ThermalDiagnostics::bose_occupation)
        .def_readonly("pair_lhs", &ThermalDiagnostics::pair_lhs)
        .def_readonly("pair_rhs", &ThermalDiagnostics::pair_rhs);
    m.def("thermal_diagnostics", &thermal_diagnostics, py::arg("state"), py::arg("k"));

    // chaos diagnostics -------------------------------------------------------

    py::class_<DivergenceSeries>(m, "DivergenceSeries")
        .def_readonly("mode", &DivergenceSeries::mode)
        .def_readonly("delta_theta", &DivergenceSeries::delta_theta)
        .def_readonly("times", &DivergenceSeries::times)
        .def_readonly("delta_n", &DivergenceSeries::delta_n)
        .def_readonly("delta_n_linear", &DivergenceSeries::delta_n_linear);
    m.def(
        "divergence_series",
        [](const MemoryCode& a, const MemoryCode& b, const std::vector<double>& times) {
            return divergence_series(a, b, times);
        },
        py::arg("a"), py::arg("b"), py::arg("times"));

    py::class_<DivergenceRate>(m, "DivergenceRate")
        .def_readonly("linearized", &DivergenceRate::linearized)
        .def_readonly("exact", &DivergenceRate::exact);
    m.def("divergence_rate", &divergence_rate, py::arg("a"), py::arg("b"), py::arg("t"),
          py::arg("k"));

    py::class_<LyapunovFit>(m, "LyapunovFit")
        .def_readonly("mode", &LyapunovFit::mode)
        .def_readonly("exponent", &LyapunovFit::exponent)
        .def_readonly("reference", &LyapunovFit::reference)
        .def_readonly("t_lo", &LyapunovFit::t_lo)
        .def_readonly("t_hi", &LyapunovFit::t_hi)
        .def_readonly("residual", &LyapunovFit::residual)
        .def_readonly("samples", &LyapunovFit::samples);
    m.def("lyapunov_estimate",
          py::overload_cast<const DivergenceSeries&>(&lyapunov_estimate),
          py::arg("series"));
    m.def("lyapunov_estimate",
          py::overload_cast<const DivergenceSeries&, double, double>(&lyapunov_estimate),
          py::arg("series"), py::arg("t_lo"), py::arg("t_hi"));

    py::class_<LifetimeReport>(m, "LifetimeReport")
        .def_readonly("lifetimes", &LifetimeReport::lifetimes)
        .def_readonly("flagged", &LifetimeReport::flagged)
        .def_readonly("tau_max", &LifetimeReport::tau_max)
        .def_readonly("tau_min", &LifetimeReport::tau_min)
        .def_readonly("recognition_window", &LifetimeReport::recognition_window);
    m.def("lifetimes", &lifetimes, py::arg("code"));

    py::class_<CrossingTime>(m, "CrossingTime")
        .def_readonly("mode", &CrossingTime::mode)
        .def_readonly("exact", &CrossingTime::exact)
        .def_readonly("paper_approx", &CrossingTime::paper_approx);
    m.def("crossing_times", &crossing_times, py::arg("a"), py::arg("b"));

    py::class_<AssociationEvent>(m, "AssociationEvent")
        .def_readonly("i", &AssociationEvent::i)
        .def_readonly("j", &AssociationEvent::j)
        .def_readonly("t", &AssociationEvent::t)
        .def_readonly("overlap", &AssociationEvent::overlap);
    m.def(
        "association_events",
        [](const std::vector<MemoryCode>& codes, const std::vector<double>& t_grid,
           double threshold) { return association_events(codes, t_grid, threshold); },
        py::arg("codes"), py::arg("t_grid"), py::arg("threshold"));

    py::class_<EntropyDivergence>(m, "EntropyDivergence")
        .def_readonly("lhs", &EntropyDivergence::lhs)
        .def_readonly("rhs", &EntropyDivergence::rhs)
        .def_readonly("relative_gap", &EntropyDivergence::relative_gap)
        .def_readonly("lhs_per_mode", &EntropyDivergence::lhs_per_mode)
        .def_readonly("rhs_per_mode", &EntropyDivergence::rhs_per_mode);
    m.def("entropy_divergence_check", &entropy_divergence_check, py::arg("a"), py::arg("b"),
          py::arg("t"), py::arg("dt"), py::arg("fixed_beta") = std::nullopt);

    // truncated Fock oracle ---------------------------------------------------

    auto fock_mod = m.def_submodule("fock", "independent truncated-Fock verification engine");

    py::class_<fock::PairSectorState>(fock_mod, "PairSectorState")
        .def(py::init<std::vector<double>>(), py::arg("amps"))
        .def_property_readonly("n_max", &fock::PairSectorState::n_max)
        .def_property_readonly(
            "amps", [](const fock::PairSectorState& s) { return to_vector(s.amps()); })
        .def("amp", &fock::PairSectorState::amp, py::arg("n"))
        .def_property_readonly("norm_sq", &fock::PairSectorState::norm_sq)
        .def_property_readonly("leakage", &fock::PairSectorState::leakage);

    fock_mod.def("vacuum_pair", &fock::vacuum_pair, py::arg("n_max"));
    fock_mod.def("build_squeezed", &fock::build_squeezed, py::arg("r"), py::arg("n_max"));
    fock_mod.def("required_n_max", &fock::required_n_max, py::arg("r"), py::arg("tolerance"));
    fock_mod.def("tail_bound", &fock::tail_bound, py::arg("r"), py::arg("n_max"));
    fock_mod.def("apply_generator", &fock::apply_generator, py::arg("theta"),
                 py::arg("n_max"), py::arg("tolerance") = 1e-6);
    fock_mod.def("evolve", &fock::evolve, py::arg("state"), py::arg("omega"),
                 py::arg("gamma"), py::arg("dt"), py::arg("steps"),
                 py::arg("tolerance") = 1e-6);
    fock_mod.def(
        "expectation",
        [](const fock::PairSectorState& state, const std::string& observable) {
            return fock::expectation(state, fock::observable_from_name(observable));
        },
        py::arg("state"), py::arg("observable"),
        "observable: N_A, N_Atilde, pair_creation, pair_annihilation");
    fock_mod.def("inner_product", &fock::inner_product, py::arg("a"), py::arg("b"));
    fock_mod.def("fidelity", &fock::fidelity, py::arg("a"), py::arg("b"));
    fock_mod.def("oracle_entropy", &fock::oracle_entropy, py::arg("state"),
                 py::arg("tolerance") = 1e-6);

    py::class_<fock::FullGridState>(fock_mod, "FullGridState")
        .def_static("basis", &fock::FullGridState::basis, py::arg("n"), py::arg("m"),
                    py::arg("n_max"))
        .def_property_readonly("n_max", &fock::FullGridState::n_max)
        .def("amp", &fock::FullGridState::amp, py::arg("n"), py::arg("m"))
        .def_property_readonly("norm_sq", &fock::FullGridState::norm_sq)
        .def_property_readonly("charge", &fock::FullGridState::charge);
    fock_mod.def("evolve_full", &fock::evolve_full, py::arg("state"), py::arg("omega"),
                 py::arg("gamma"), py::arg("dt"), py::arg("steps"));
    fock_mod.def("charge_conservation_probe", &fock::charge_conservation_probe,
                 py::arg("initial"), py::arg("omega"), py::arg("gamma"), py::arg("t_final"),
                 py::arg("samples") = 41, py::arg("tolerance") = 1e-6);

    // classical doubled oscillator --------------------------------------------

    auto osc_mod = m.def_submodule("osc", "classical doubled damped oscillator");

    py::class_<osc::OscParams>(osc_mod, "OscParams")
        .def(py::init<double, double, double>(), py::arg("mass"), py::arg("damping"),
             py::arg("stiffness"))
        .def_readonly("mass", &osc::OscParams::mass)
        .def_readonly("damping", &osc::OscParams::damping)
        .def_readonly("stiffness", &osc::OscParams::stiffness)
        .def_property_readonly("underdamped", &osc::OscParams::underdamped);

    py::class_<osc::OscState>(osc_mod, "OscState")
        .def(py::init<double, double, double, double>(), py::arg("x") = 0.0,
             py::arg("vx") = 0.0, py::arg("y") = 0.0, py::arg("vy") = 0.0)
        .def_readonly("x", &osc::OscState::x)
        .def_readonly("vx", &osc::OscState::vx)
        .def_readonly("y", &osc::OscState::y)
        .def_readonly("vy", &osc::OscState::vy);

    py::class_<osc::OscillatorTrajectory>(osc_mod, "OscillatorTrajectory")
        .def_readonly("times", &osc::OscillatorTrajectory::times)
        .def_readonly("states", &osc::OscillatorTrajectory::states)
        .def_readonly("h", &osc::OscillatorTrajectory::h);

    py::class_<osc::EnvelopeFit>(osc_mod, "EnvelopeFit")
        .def_readonly("rate", &osc::EnvelopeFit::rate)
        .def_readonly("residual", &osc::EnvelopeFit::residual)
        .def_readonly("extrema", &osc::EnvelopeFit::extrema);

    osc_mod.def("integrate", &osc::integrate, py::arg("params"), py::arg("initial"),
                py::arg("t_end"), py::arg("dt"));
    osc_mod.def("analytic_x", &osc::analytic_x, py::arg("params"), py::arg("x0"),
                py::arg("v0"), py::arg("t"));
    osc_mod.def("conserved_h", &osc::conserved_h, py::arg("state"), py::arg("params"));
    osc_mod.def("envelope_rate", &osc::envelope_rate, py::arg("trajectory"),
                py::arg("mirror") = false);
}
