#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bayesmet/runner.hpp"

namespace py = pybind11;
using namespace bayesmet;

namespace {

TwoModeState probe_by_name(const std::string& name) { return make_probe(probe_from_name(name)); }

PersonickSolution solve_by_name(const std::string& name, double theta_bar, double w0) {
    const FlatPrior prior(theta_bar, w0);
    return solve_estimator(averaged_moments(probe_by_name(name), prior));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Personick bounds and Bayesian error simulation for two-mode interferometry";

    py::register_exception<Error>(m, "BayesmetError");

    py::class_<FockDims>(m, "FockDims")
        .def(py::init<int, int>())
        .def_readwrite("d1", &FockDims::d1)
        .def_readwrite("d2", &FockDims::d2)
        .def("size", &FockDims::size);

    py::class_<TwoModeState>(m, "TwoModeState")
        .def_property_readonly("dims", [](const TwoModeState& s) { return s.dims; })
        .def_property_readonly("amps", [](const TwoModeState& s) { return s.amps; })
        .def_readonly("tail_prob", &TwoModeState::tail_prob);

    py::class_<FlatPrior>(m, "FlatPrior")
        .def(py::init<double, double>(), py::arg("mean"), py::arg("width"))
        .def_readonly("mean", &FlatPrior::mean)
        .def_readonly("width", &FlatPrior::width)
        .def("variance", &FlatPrior::variance);

    py::class_<PersonickSolution>(m, "PersonickSolution")
        .def_readonly("bound", &PersonickSolution::bound)
        .def_readonly("bound_dual", &PersonickSolution::bound_dual)
        .def_readonly("support_dim", &PersonickSolution::support_dim)
        .def_property_readonly("estimates",
                               [](const PersonickSolution& s) { return s.estimates; })
        .def_property_readonly("projectors",
                               [](const PersonickSolution& s) { return s.projectors; })
        .def_readonly("sylvester_residual", &PersonickSolution::sylvester_residual);

    py::class_<MseCurve>(m, "MseCurve")
        .def_readonly("mu", &MseCurve::mu)
        .def_readonly("mse", &MseCurve::mse)
        .def_readonly("stderr", &MseCurve::stderr_)
        .def_readonly("taylor_band", &MseCurve::taylor_band)
        .def_readonly("seed", &MseCurve::seed);

    py::class_<TwoPhotonProbe>(m, "TwoPhotonProbe")
        .def_readonly("c0", &TwoPhotonProbe::c0)
        .def_readonly("c1", &TwoPhotonProbe::c1)
        .def_readonly("c2", &TwoPhotonProbe::c2);

    m.def("make_probe", &probe_by_name, py::arg("state"),
          "Probe state by name: coherent, noon, tsv, ses, tsc-opt, tsc-int");
    m.def(
        "encode_phase",
        [](const TwoModeState& s, double theta) { return encode_phase(s, theta); },
        py::arg("state"), py::arg("theta"));
    m.def("mean_photon_number", &mean_photon_number);
    m.def("mandel_q", [](const TwoModeState& s) { return mandel_q(s); });
    m.def("j_parameter", [](const TwoModeState& s) { return j_parameter(s); });
    m.def("quantum_fisher", py::overload_cast<const TwoModeState&>(&quantum_fisher));

    m.def("personick_solve", &solve_by_name, py::arg("state"), py::arg("theta_bar"),
          py::arg("w0"), "Single-shot optimal estimator and bound for a named probe");
    m.def(
        "single_shot_bound",
        [](const std::string& state, double theta_bar, double w0) {
            return solve_by_name(state, theta_bar, w0).bound;
        },
        py::arg("state"), py::arg("theta_bar"), py::arg("w0"));
    m.def(
        "narrow_prior_bound",
        [](const std::string& state, double theta_bar, double w0, double fq) {
            return narrow_prior_bound(probe_by_name(state), FlatPrior(theta_bar, w0), fq);
        },
        py::arg("state"), py::arg("theta_bar"), py::arg("w0"), py::arg("fq"));
    m.def(
        "collective_bound",
        [](const std::string& state, double theta_bar, double w0, int mu) {
            return collective_bound(probe_by_name(state), FlatPrior(theta_bar, w0), mu);
        },
        py::arg("state"), py::arg("theta_bar"), py::arg("w0"), py::arg("mu"));

    m.def(
        "simulate",
        [](const std::string& state, const std::string& scheme, double theta_bar, double w0,
           int mu_max, long samples, std::uint64_t seed, bool taylor) {
            ExperimentConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.taylor = taylor;
            return run_curve(state, scheme, FlatPrior(theta_bar, w0), mu_max, cfg);
        },
        py::arg("state"), py::arg("scheme"), py::arg("theta_bar") = 0.0,
        py::arg("w0") = M_PI / 2, py::arg("mu_max") = 10, py::arg("samples") = 50000,
        py::arg("seed") = 20190527, py::arg("taylor") = false,
        "Repeated-measurement Bayesian MSE curve for named state and scheme");

    m.def(
        "scheme_likelihood",
        [](const std::string& state, const std::string& scheme, double theta) {
            ExperimentConfig cfg;
            const TwoModeState probe = probe_by_name(state);
            const Povm povm = scheme_for_probe(scheme, probe, FlatPrior(0.0, M_PI / 2), cfg);
            return likelihood(povm, encode_phase(probe, theta));
        },
        py::arg("state"), py::arg("scheme"), py::arg("theta"),
        "Outcome probabilities of a named scheme at one phase");

    m.def(
        "classical_fisher",
        [](const std::string& state, const std::string& scheme, double theta) {
            ExperimentConfig cfg;
            const TwoModeState probe = probe_by_name(state);
            const Povm povm = scheme_for_probe(scheme, probe, FlatPrior(0.0, M_PI / 2), cfg);
            return classical_fisher(povm, probe, theta);
        },
        py::arg("state"), py::arg("scheme"), py::arg("theta") = 0.0);

    m.def("best_fisher_two_photon", &best_fisher_two_photon, py::arg("eta"));
    m.def(
        "lossy_sweep",
        [](double eta, double theta_bar, double w0, int mu_max, long samples,
           std::uint64_t seed) {
            SamplingBudget b;
            b.samples_per_mu = samples;
            b.seed = seed;
            LossSweepResult res = lossy_personick_sweep(eta, FlatPrior(theta_bar, w0), mu_max, b);
            return py::make_tuple(res.probe, res.solution, res.curve, res.fq);
        },
        py::arg("eta") = 0.9, py::arg("theta_bar") = M_PI / 4, py::arg("w0") = M_PI / 2,
        py::arg("mu_max") = 10, py::arg("samples") = 50000, py::arg("seed") = 20190527);

    m.def(
        "mu_tau",
        [](const MseCurve& curve, double fq, double eps_target) {
            return mu_tau(curve, fq, eps_target);
        },
        py::arg("curve"), py::arg("fq"), py::arg("eps_target") = 0.05);
}
